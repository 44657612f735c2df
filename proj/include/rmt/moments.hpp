// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

namespace rmt {

// Gaussian moment with spike and truncation:
//   int x^{i-1} e^{-x^2/2 + alpha x} (1 - s chi_{(T,inf)}(x)) dx,  i >= 1.
// T = -infinity means no truncation (pass -INFINITY).  Evaluated by the
// exact three-term recursion (no quadrature), with the tail base case via
// the scaled complementary error function.  Domain: i <= 20, |alpha| <= 20.
std::complex<double> spiked_moment(int i, double alpha, double T, std::complex<double> s);

namespace detail {

// Normalized moments: both vectors are the raw integrals divided by
// sqrt(2 pi) e^{alpha^2/2}.  full[i-1] = E[(alpha+Z)^{i-1}] with Z standard
// normal; tail[i-1] is the corresponding integral over (T, inf).  The
// common factor cancels in the determinant ratios that consume these.
std::vector<double> full_moments_normalized(double alpha, int k);
std::vector<double> tail_moments_normalized(double alpha, double T, int k);

}  // namespace detail

}  // namespace rmt
