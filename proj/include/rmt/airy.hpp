// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace rmt {

// Airy function Ai and its derivative on [-50, 50].
//
// Absolute error <= ~1e-12 for x >= -10, relative ~1e-10 further left.
// Three evaluation regimes: Maclaurin series (|x| <= 4), quadrature of the
// oscillatory integral representation along the pi/6 rays (4 < |x| <= 8),
// and the standard asymptotic expansions in zeta = (2/3)|x|^{3/2} beyond.
double airy_ai(double x);
double airy_ai_prime(double x);

namespace detail {
// Guarded variants for operator discretizations whose transformed nodes can
// exceed the public domain: Ai underflows there, so 0 is returned instead
// of throwing.
double airy_ai_clipped(double x);
double airy_ai_prime_clipped(double x);
}  // namespace detail

}  // namespace rmt
