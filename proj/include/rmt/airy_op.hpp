// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace rmt {

// Airy kernel (Ai(x)Ai'(y) - Ai'(x)Ai(y)) / (x - y), with the diagonal
// limit Ai'(x)^2 - x Ai(x)^2 used for |x - y| < 1e-5.
double airy_kernel(double x, double y);

// Nystrom discretization of the Airy-kernel operator on [T, inf).
//
// The half-line maps to u in (0,1) by xi = T + L u / (1-u) on Gauss-Legendre
// nodes; the kernel matrix is symmetrized by sqrt(w_i) K(xi_i, xi_j)
// sqrt(w_j), so its eigendecomposition is real and determinants/resolvents
// for any complex s come from products over eigenvalues.
class AiryDiscretization {
  public:
    explicit AiryDiscretization(double T, int node_count = 80, double map_scale = 10.0);

    double left_endpoint() const { return T_; }
    int node_count() const { return n_; }
    const std::vector<double>& nodes() const { return xi_; }
    const std::vector<double>& weights() const { return w_; }
    const Eigen::MatrixXd& kernel_matrix() const { return A_; }
    const Eigen::VectorXd& eigenvalues() const { return evals_; }

    // det(1 - s chi K chi) = prod (1 - s lambda_i)
    std::complex<double> fredholm(std::complex<double> s) const;

    // <(1 - s chi K chi)^{-1} f, g> over [T, inf) with the Nystrom weights,
    // given node samples of f and g.  Throws SingularOperator when 1 - s
    // lambda vanishes.
    std::complex<double> resolvent_inner(std::complex<double> s, const std::vector<double>& f,
                                         const std::vector<double>& g) const;

    // node values of (1 - s chi K chi)^{-1} f; residual norm checked to 1e-10
    std::vector<std::complex<double>> resolvent_apply(std::complex<double> s,
                                                      const std::vector<double>& f) const;

  private:
    double T_;
    int n_;
    std::vector<double> xi_, w_, sqw_;
    Eigen::MatrixXd A_;
    Eigen::MatrixXd evecs_;
    Eigen::VectorXd evals_;
};

}  // namespace rmt
