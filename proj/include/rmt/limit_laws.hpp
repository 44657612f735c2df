// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "rmt/airy_op.hpp"

namespace rmt {

using cplx = std::complex<double>;

// det(1 - s chi_{[T,inf)} K_Airy chi_{[T,inf)}).  Nystrom determinant with a
// node-doubling consistency check (80 vs 160 nodes); disagreement beyond
// 1e-7 throws Divergence.  Domain: T >= -12, s real in [0,1] or |s-1| <= 1.
cplx fredholm_tw(double T, cplx s);

// Tracy-Widom law of the j-th largest eigenvalue (j <= 6):
//   sum_{i<j} ((-1)^i / i!) d^i/ds^i|_{s=1} fredholm_tw(T; s),
// s-derivatives by a Cauchy circle |s-1| = 1/2 with 64 nodes.
double tw_jth(double T, int j);

// Deformed law at the continuous transition:
//   F1(T; alpha; s) = F0(T;s) (1 - s <(1 - s chi K chi)^{-1} C_alpha, chi Ai>)
cplx f1(double T, double alpha, cplx s);

// Rank-k deformation: F_TW(T;s) det[(alpha_i + d/dT)^{j-1} r(T;alpha_i;s)] /
// Vandermonde(alpha), with r = f1/fredholm_tw interpolated on a Chebyshev
// grid (120 points, window T +- 3) and differentiated spectrally.
cplx fk(double T, const std::vector<double>& alphas, cplx s);
double fk_jth(double T, int j, const std::vector<double>& alphas);

// Finite-GUE laws from the spiked Gaussian moment determinants:
//   G_k(T; alpha; s) = det[full_i(a_j) - s tail_i(a_j, T)] / det[full_i(a_j)]
cplx gk(double T, const std::vector<double>& alphas, cplx s);

// j-th eigenvalue law of the k x k GUE at alpha = 0, via the confluent
// limit alphas = eps (1..k) with Richardson extrapolation eps -> 0.
double gk_jth(double T, int j, int k);

// j-th eigenvalue law of the spiked GUE with distinct external source
// eigenvalues (s-derivatives of gk at s = 1).
double gk_jth(double T, int j, const std::vector<double>& alphas);

double normal_cdf(double T);

// Evaluated law on a T grid; serializes as "T,value" rows, 17 significant
// digits, one law per file.
struct LawCurve {
    std::string law;
    std::vector<double> params;
    std::vector<double> grid;
    std::vector<double> values;

    void write_csv(std::ostream& os) const;
    // linear interpolation with flat extension; grids are fine enough that
    // the interpolation error is far below any comparison tolerance
    double interpolate(double T) const;
};

}  // namespace rmt
