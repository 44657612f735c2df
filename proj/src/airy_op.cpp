// SPDX-License-Identifier: Apache-2.0
#include "rmt/airy_op.hpp"

#include <cmath>

#include "rmt/airy.hpp"
#include "rmt/errors.hpp"
#include "rmt/quadrature.hpp"

namespace rmt {

double airy_kernel(double x, double y) {
    using detail::airy_ai_clipped;
    using detail::airy_ai_prime_clipped;
    if (std::abs(x - y) < 1e-5) {
        const double m = 0.5 * (x + y);
        const double ai = airy_ai_clipped(m), aip = airy_ai_prime_clipped(m);
        return aip * aip - m * ai * ai;
    }
    return (airy_ai_clipped(x) * airy_ai_prime_clipped(y) -
            airy_ai_prime_clipped(x) * airy_ai_clipped(y)) /
           (x - y);
}

AiryDiscretization::AiryDiscretization(double T, int node_count, double map_scale)
    : T_(T), n_(node_count) {
    const QuadratureRule gl = gauss_legendre(node_count, 0.0, 1.0);
    xi_.resize(n_);
    w_.resize(n_);
    sqw_.resize(n_);
    for (int i = 0; i < n_; ++i) {
        const double u = gl.nodes[i];
        xi_[i] = T + map_scale * u / (1.0 - u);
        w_[i] = gl.weights[i] * map_scale / ((1.0 - u) * (1.0 - u));
        sqw_[i] = std::sqrt(w_[i]);
    }
    A_.resize(n_, n_);
    std::vector<double> ai(n_), aip(n_);
    for (int i = 0; i < n_; ++i) {
        ai[i] = detail::airy_ai_clipped(xi_[i]);
        aip[i] = detail::airy_ai_prime_clipped(xi_[i]);
    }
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j <= i; ++j) {
            double k;
            if (i == j || std::abs(xi_[i] - xi_[j]) < 1e-5) {
                const double m = 0.5 * (xi_[i] + xi_[j]);
                const double a = detail::airy_ai_clipped(m), ap = detail::airy_ai_prime_clipped(m);
                k = ap * ap - m * a * a;
            } else {
                k = (ai[i] * aip[j] - aip[i] * ai[j]) / (xi_[i] - xi_[j]);
            }
            A_(i, j) = A_(j, i) = sqw_[i] * k * sqw_[j];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A_);
    evals_ = es.eigenvalues();
    evecs_ = es.eigenvectors();
}

std::complex<double> AiryDiscretization::fredholm(std::complex<double> s) const {
    std::complex<double> det = 1.0;
    for (int i = 0; i < n_; ++i) det *= 1.0 - s * evals_(i);
    return det;
}

std::complex<double> AiryDiscretization::resolvent_inner(std::complex<double> s,
                                                         const std::vector<double>& f,
                                                         const std::vector<double>& g) const {
    Eigen::VectorXd vf(n_), vg(n_);
    for (int i = 0; i < n_; ++i) {
        vf(i) = sqw_[i] * f[i];
        vg(i) = sqw_[i] * g[i];
    }
    const Eigen::VectorXd cf = evecs_.transpose() * vf;
    const Eigen::VectorXd cg = evecs_.transpose() * vg;
    std::complex<double> acc = 0.0;
    for (int i = 0; i < n_; ++i) {
        const std::complex<double> d = 1.0 - s * evals_(i);
        if (std::abs(d) < 1e-12) throw SingularOperator("resolvent: 1 - s lambda vanishes");
        acc += cf(i) * cg(i) / d;
    }
    return acc;
}

std::vector<std::complex<double>> AiryDiscretization::resolvent_apply(
    std::complex<double> s, const std::vector<double>& f) const {
    Eigen::VectorXd v(n_);
    for (int i = 0; i < n_; ++i) v(i) = sqw_[i] * f[i];
    const Eigen::VectorXd c = evecs_.transpose() * v;
    Eigen::VectorXcd coef(n_);
    for (int i = 0; i < n_; ++i) {
        const std::complex<double> d = 1.0 - s * evals_(i);
        if (std::abs(d) < 1e-12) throw SingularOperator("resolvent_apply: singular operator");
        coef(i) = c(i) / d;
    }
    const Eigen::VectorXcd u = evecs_ * coef;
    const Eigen::VectorXcd resid = u - s * (A_ * u) - v.cast<std::complex<double>>();
    if (resid.norm() > 1e-10 * (1.0 + v.norm()))
        throw SingularOperator("resolvent_apply: residual above 1e-10");
    std::vector<std::complex<double>> out(n_);
    for (int i = 0; i < n_; ++i) out[i] = u(i) / sqw_[i];
    return out;
}

}  // namespace rmt
