// SPDX-License-Identifier: Apache-2.0
#include "rmt/equilibrium.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "rmt/errors.hpp"

namespace rmt {

namespace {

constexpr int kThetaNodes = 2048;

// int_0^pi f(m + r cos th) dth by the midpoint rule; exact for cosine
// polynomials of degree < 2 kThetaNodes.
template <typename F>
double theta_integral(F&& f, double mid, double half) {
    double s = 0.0;
    for (int i = 0; i < kThetaNodes; ++i) {
        const double th = (i + 0.5) * M_PI / kThetaNodes;
        s += f(mid + half * std::cos(th));
    }
    return s * M_PI / kThetaNodes;
}

Eigen::Vector2d moment_conditions(const Potential& pot, double lo, double hi) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    Eigen::Vector2d F;
    F(0) = theta_integral([&](double s) { return pot.Vp(s); }, mid, half);
    F(1) = theta_integral([&](double s) { return s * pot.Vp(s); }, mid, half) - 2.0 * M_PI;
    return F;
}

double max_root_modulus(const std::vector<double>& poly) {
    // companion-matrix eigenvalues of the (monic) polynomial
    std::vector<double> c = poly;
    while (c.size() > 1 && c.back() == 0.0) c.pop_back();
    const int n = static_cast<int>(c.size()) - 1;
    if (n < 1) return 0.0;
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[i] / c[n];
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    const auto eig = comp.eigenvalues();
    double mx = 0.0;
    for (int i = 0; i < n; ++i) mx = std::max(mx, std::abs(eig(i)));
    return mx;
}

}  // namespace

EquilibriumData solve_equilibrium(const Potential& pot,
                                  std::optional<std::pair<double, double>> init) {
    pot.validate();

    double lo, hi;
    if (init) {
        lo = init->first;
        hi = init->second;
    } else {
        const double b = max_root_modulus(polyder(pot.coeffs())) + 1.0;
        lo = -b;
        hi = b;
    }

    // damped Newton on the two moment conditions
    bool converged = false;
    for (int it = 0; it < 200; ++it) {
        const Eigen::Vector2d F = moment_conditions(pot, lo, hi);
        if (!F.allFinite()) throw NoConvergence("equilibrium: moment conditions not finite");
        const double h = 1e-7;
        Eigen::Matrix2d J;
        J.col(0) = (moment_conditions(pot, lo + h, hi) - F) / h;
        J.col(1) = (moment_conditions(pot, lo, hi + h) - F) / h;
        Eigen::Vector2d step = J.fullPivLu().solve(-F);
        if (!step.allFinite()) throw NoConvergence("equilibrium: singular Newton step");
        double t = 1.0;
        const double f0 = F.norm();
        while (t > 1e-6) {
            const double nlo = lo + t * step(0), nhi = hi + t * step(1);
            if (nlo < nhi && moment_conditions(pot, nlo, nhi).norm() < f0) break;
            t *= 0.5;
        }
        lo += t * step(0);
        hi += t * step(1);
        if (step.norm() * t < 1e-12) {
            converged = moment_conditions(pot, lo, hi).norm() < 1e-9;
            break;
        }
    }
    if (!converged) throw NoConvergence("equilibrium: endpoint Newton did not converge");

    EquilibriumData eq;
    eq.pot_ = pot;
    eq.lo_ = lo;
    eq.hi_ = hi;
    eq.mid_ = 0.5 * (lo + hi);
    eq.half_ = 0.5 * (hi - lo);

    // Qt(x) = (1/pi) int (V'(x) - V'(s)) / (x - s) dtheta: expand the divided
    // difference as sum_j s^j P_j(x) with P_j(x) = sum_{k>j} vp_k x^{k-1-j},
    // so only the Chebyshev moments of s^j are needed.
    const std::vector<double> vp = polyder(pot.coeffs());
    const int deg = static_cast<int>(vp.size()) - 1;
    std::vector<double> mom(deg + 1, 0.0);
    for (int j = 0; j <= deg; ++j)
        mom[j] = theta_integral([j](double s) { return std::pow(s, j); }, eq.mid_, eq.half_);
    std::vector<double> qt(std::max(deg, 1), 0.0);
    for (int j = 0; j < deg; ++j)
        for (int k = j + 1; k <= deg; ++k) qt[k - 1 - j] += mom[j] * vp[k];
    for (double& c : qt) c /= M_PI;
    eq.qt_ = qt;

    // interior positivity check (one-cut validation)
    double scale = 0.0;
    for (int i = 0; i <= 1000; ++i)
        scale = std::max(scale, std::abs(polyval(qt, lo + (hi - lo) * i / 1000.0)));
    for (int i = 0; i <= 1000; ++i) {
        const double x = lo + (hi - lo) * i / 1000.0;
        if (polyval(qt, x) < -1e-12 * scale)
            throw MultiCut("equilibrium: density negative inside the support");
    }

    // cosine series of f(th) = sin^2(th) Qt(m + r cos th) / (2 pi); finite
    // of degree deg(Qt)+2, computed by the exact midpoint DCT
    const int ncoef = static_cast<int>(qt.size()) + 3;
    eq.cos_coeffs_.assign(ncoef, 0.0);
    for (int j = 0; j < ncoef; ++j) {
        double s = 0.0;
        for (int i = 0; i < kThetaNodes; ++i) {
            const double th = (i + 0.5) * M_PI / kThetaNodes;
            const double f =
                std::sin(th) * std::sin(th) * polyval(qt, eq.mid_ + eq.half_ * std::cos(th)) /
                (2.0 * M_PI);
            s += f * std::cos(j * th);
        }
        eq.cos_coeffs_[j] = (j == 0 ? 1.0 : 2.0) * s / kThetaNodes;
    }

    if (std::abs(eq.mass() - 1.0) > 1e-10)
        throw NoConvergence("equilibrium: total mass differs from 1");

    // beta = (pi Psi(x) / sqrt(e - x))^{2/3} as x -> e
    eq.beta_ = std::pow(std::sqrt(hi - lo) * polyval(qt, hi) / 2.0, 2.0 / 3.0);
    if (!(eq.beta_ > 0.0)) throw MultiCut("equilibrium: vanishing edge constant");

    // Robin constant from the midpoint of the support
    eq.ell_ = 2.0 * eq.log_potential_interior(eq.mid_) - pot.V(eq.mid_);
    return eq;
}

double EquilibriumData::psi(double x) const {
    if (x <= lo_ || x >= hi_) return 0.0;
    return std::sqrt((x - lo_) * (hi_ - x)) * polyval(qt_, x) / (2.0 * M_PI);
}

double EquilibriumData::mass() const { return M_PI * half_ * half_ * cos_coeffs_[0]; }

double EquilibriumData::g(double x) const {
    if (x < hi_) throw DomainError("equilibrium g: x < right endpoint");
    const double w = (x - mid_) / half_;
    const double z = w + std::sqrt(std::max(w * w - 1.0, 0.0));
    double val = cos_coeffs_[0] * std::log(half_ * z / 2.0);
    double zp = 1.0;
    for (std::size_t j = 1; j < cos_coeffs_.size(); ++j) {
        zp *= z;
        val -= cos_coeffs_[j] / (j * zp);
    }
    return M_PI * half_ * half_ * val;
}

double EquilibriumData::log_potential_interior(double x) const {
    if (x <= lo_ || x >= hi_) throw DomainError("log_potential_interior: x outside support");
    const double phi = std::acos((x - mid_) / half_);
    double val = cos_coeffs_[0] * std::log(half_ / 2.0);
    for (std::size_t j = 1; j < cos_coeffs_.size(); ++j)
        val -= cos_coeffs_[j] * std::cos(j * phi) / j;
    return M_PI * half_ * half_ * val;
}

double EquilibriumData::g_prime(double x) const {
    if (x < hi_) throw DomainError("g_prime: x < right endpoint");
    const double R = (x - lo_) * (x - hi_);
    return 0.5 * (pot_.Vp(x) - polyval(qt_, x) * std::sqrt(std::max(R, 0.0)));
}

double EquilibriumData::g_second(double x) const {
    if (x <= hi_) throw DomainError("g_second: x <= right endpoint");
    const double R = (x - lo_) * (x - hi_);
    const double Rp = 2.0 * x - (lo_ + hi_);
    const std::vector<double> qtp = polyder(qt_);
    return 0.5 * (pot_.Vpp(x) - polyval(qtp, x) * std::sqrt(R) -
                  polyval(qt_, x) * Rp / (2.0 * std::sqrt(R)));
}

double EquilibriumData::effective_potential_right(double x) const {
    return pot_.V(x) - 2.0 * g(x) - ell_;
}

double g_func(const EquilibriumData& eq, double x) {
    if (x < eq.right_endpoint()) throw DomainError("g_func: x below the right endpoint");
    return eq.g(x);
}

}  // namespace rmt
