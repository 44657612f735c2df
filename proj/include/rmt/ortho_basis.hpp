// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "rmt/potential.hpp"

namespace rmt {

// Orthonormal polynomials p_0..p_d for the varying weight e^{-n V(x)} dx,
// carried as the weighted family psi_l(x) = p_l(x) e^{-n V(x)/2} with the
// three-term recurrence
//     x psi_l = b_l psi_{l+1} + a_l psi_l + b_{l-1} psi_{l-1},   b_l > 0.
//
// Coefficients come from the discretized Stieltjes procedure on a composite
// Gauss grid covering {x : e^{-n V(x)} > 1e-300}; the Gaussian builtin also
// has the scaled-Hermite closed form b_l = sqrt((l+1)/n), which the builder
// cross-checks against the numerical route.
class OrthoBasis {
  public:
    int n() const { return n_; }
    int max_degree() const { return d_; }
    const Potential& potential() const { return pot_; }
    const std::vector<double>& rec_a() const { return a_; }
    const std::vector<double>& rec_b() const { return b_; }
    const std::vector<double>& leading_coeffs() const { return gamma_; }

    // psi_l(x) by the recurrence; l <= max_degree
    double psi(int l, double x) const;
    // all of psi_0..psi_{lmax}(x) in one sweep
    void psi_all(int lmax, double x, double* out) const;
    // bare polynomial values p_0..p_{lmax}(x) (no weight factor)
    void p_all(int lmax, double x, double* out) const;

    // quadrature grid used by the builder (also a convenient default rule
    // for integrals against the weight)
    const std::vector<double>& grid_nodes() const { return gx_; }
    const std::vector<double>& grid_weights() const { return gw_; }

  private:
    friend OrthoBasis build_basis(const Potential&, int, int);
    Potential pot_ = Potential::gaussian();
    int n_ = 1, d_ = 0;
    std::vector<double> a_, b_, gamma_;
    std::vector<double> gx_, gw_;
};

// Builds the basis (d <= 40, n <= 50).  Throws UnderflowRange when the
// weight support cannot be bracketed and LossOfOrthogonality when the
// resulting Gram matrix deviates from the identity by more than 1e-7.
OrthoBasis build_basis(const Potential& pot, int n, int d);

// Gamma_j(a; n) = int e^{n (a x - V(x)/2)} psi_j(x) dx, by adaptive
// quadrature over the region where the exponent n(ax - V) is within
// `exp_margin` of its maximum (every saddle V'(x) = a is covered).
double gamma_j(const OrthoBasis& basis, int j, double a, double exp_margin = 50.0);

}  // namespace rmt
