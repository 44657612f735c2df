// SPDX-License-Identifier: Apache-2.0
#include "rmt/ortho_basis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "rmt/errors.hpp"
#include "rmt/quadrature.hpp"

namespace rmt {

namespace {

constexpr double kLogUnderflow = 690.0;  // e^{-690} ~ 1e-300

// argmin of V by scanning stationary points
double potential_argmin(const Potential& pot) {
    double best_x = 0.0, best_v = pot.V(0.0);
    for (double x = -50.0; x <= 50.0; x += 0.05) {
        if (pot.V(x) < best_v) {
            best_v = pot.V(x);
            best_x = x;
        }
    }
    return best_x;
}

// outermost solution of V(x) = level in the given direction
double weight_edge(const Potential& pot, double from, double level, double dir) {
    double lo = from, hi = from + dir;
    int guard = 0;
    while (pot.V(hi) < level) {
        hi = from + 2.0 * (hi - from);
        if (++guard > 200) throw UnderflowRange("ortho basis: weight support unbounded");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (pot.V(mid) < level ? lo : hi) = mid;
    }
    return hi;
}

}  // namespace

OrthoBasis build_basis(const Potential& pot, int n, int d) {
    if (n < 1 || n > 50 || d < 0 || d > 40)
        throw DomainError("build_basis: need 1 <= n <= 50 and 0 <= d <= 40");

    OrthoBasis basis;
    basis.pot_ = pot;
    basis.n_ = n;
    basis.d_ = d;

    // grid over {e^{-nV} > 1e-300}
    const double x_min = potential_argmin(pot);
    const double level = pot.V(x_min) + kLogUnderflow / n;
    const double lo = weight_edge(pot, x_min, level, -1.0);
    const double hi = weight_edge(pot, x_min, level, +1.0);
    std::vector<double> breaks;
    const int panels = 64;
    for (int i = 0; i <= panels; ++i) breaks.push_back(lo + (hi - lo) * i / panels);
    const QuadratureRule rule = composite_gauss_legendre(40, breaks);
    basis.gx_ = rule.nodes;
    basis.gw_ = rule.weights;

    const std::size_t m = rule.nodes.size();
    std::vector<double> sqrtw(m);
    for (std::size_t i = 0; i < m; ++i)
        sqrtw[i] = std::exp(-0.5 * n * pot.V(rule.nodes[i]));

    // discretized Stieltjes on the weighted family
    std::vector<double> prev(m, 0.0), cur(m);
    double norm0 = 0.0;
    for (std::size_t i = 0; i < m; ++i) norm0 += rule.weights[i] * sqrtw[i] * sqrtw[i];
    if (!(norm0 > 0.0)) throw UnderflowRange("ortho basis: weight mass underflowed");
    const double gamma0 = 1.0 / std::sqrt(norm0);
    for (std::size_t i = 0; i < m; ++i) cur[i] = gamma0 * sqrtw[i];

    std::vector<double> ac, bc, gam{gamma0};
    std::vector<double> next(m);
    for (int l = 0; l < d; ++l) {
        double al = 0.0;
        for (std::size_t i = 0; i < m; ++i) al += rule.weights[i] * rule.nodes[i] * cur[i] * cur[i];
        double nrm2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            next[i] = (rule.nodes[i] - al) * cur[i] - (l > 0 ? bc[l - 1] * prev[i] : 0.0);
            nrm2 += rule.weights[i] * next[i] * next[i];
        }
        const double bl = std::sqrt(nrm2);
        if (!(bl > 0.0)) throw LossOfOrthogonality("ortho basis: vanishing recurrence norm");
        for (std::size_t i = 0; i < m; ++i) next[i] /= bl;
        ac.push_back(al);
        bc.push_back(bl);
        gam.push_back(gam.back() / bl);
        std::swap(prev, cur);
        std::swap(cur, next);
    }

    if (pot.is_gaussian()) {
        // closed-form scaled-Hermite recurrence, cross-checked
        for (int l = 0; l < d; ++l) {
            const double b_exact = std::sqrt((l + 1.0) / n);
            if (std::abs(bc[l] - b_exact) > 1e-8 || std::abs(ac[l]) > 1e-9)
                throw LossOfOrthogonality("ortho basis: Stieltjes route off the Hermite form");
            ac[l] = 0.0;
            bc[l] = b_exact;
        }
        gam.assign(1, std::pow(n / (2.0 * M_PI), 0.25));
        for (int l = 0; l < d; ++l) gam.push_back(gam.back() / bc[l]);
    }

    basis.a_ = std::move(ac);
    basis.b_ = std::move(bc);
    basis.gamma_ = std::move(gam);

    // orthonormality audit on the build grid
    std::vector<double> vals(d + 1);
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(d + 1, d + 1);
    for (std::size_t i = 0; i < m; ++i) {
        basis.psi_all(d, rule.nodes[i], vals.data());
        for (int r = 0; r <= d; ++r)
            for (int c = 0; c <= r; ++c) G(r, c) += rule.weights[i] * vals[r] * vals[c];
    }
    double dev = 0.0;
    for (int r = 0; r <= d; ++r)
        for (int c = 0; c <= r; ++c) dev = std::max(dev, std::abs(G(r, c) - (r == c ? 1.0 : 0.0)));
    if (dev > 1e-7) throw LossOfOrthogonality("ortho basis: Gram deviation above 1e-7");

    return basis;
}

double OrthoBasis::psi(int l, double x) const {
    std::vector<double> vals(l + 1);
    psi_all(l, x, vals.data());
    return vals[l];
}

void OrthoBasis::psi_all(int lmax, double x, double* out) const {
    const double w = std::exp(-0.5 * n_ * pot_.V(x));
    p_all(lmax, x, out);
    for (int l = 0; l <= lmax; ++l) out[l] *= w;
}

void OrthoBasis::p_all(int lmax, double x, double* out) const {
    double pm = 0.0, pc = gamma_[0];
    out[0] = pc;
    for (int l = 0; l < lmax; ++l) {
        const double pn = ((x - a_[l]) * pc - (l > 0 ? b_[l - 1] * pm : 0.0)) / b_[l];
        pm = pc;
        pc = pn;
        out[l + 1] = pc;
    }
}

double gamma_j(const OrthoBasis& basis, int j, double a, double exp_margin) {
    if (j < 0 || j > basis.max_degree()) throw DomainError("gamma_j: j out of range");
    const Potential& pot = basis.potential();
    const int n = basis.n();

    // stationary points of the exponent n(ax - V(x))
    std::vector<double> saddles;
    {
        std::vector<double> vp = polyder(pot.coeffs());
        vp[0] -= a;  // V'(x) - a
        while (vp.size() > 1 && vp.back() == 0.0) vp.pop_back();
        const int deg = static_cast<int>(vp.size()) - 1;
        if (deg >= 1) {
            Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
            for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -vp[i] / vp[deg];
            for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
            const auto eig = comp.eigenvalues();
            for (int i = 0; i < deg; ++i)
                if (std::abs(eig(i).imag()) < 1e-9) saddles.push_back(eig(i).real());
        }
    }
    if (saddles.empty()) throw QuadratureFailure("gamma_j: no saddle of the exponent found");

    auto expo = [&](double x) { return n * (a * x - pot.V(x)); };
    double peak = expo(saddles[0]);
    for (double s : saddles) peak = std::max(peak, expo(s));
    const double floor_level = peak - exp_margin;

    double lo = *std::min_element(saddles.begin(), saddles.end());
    double hi = *std::max_element(saddles.begin(), saddles.end());
    double step = 1.0;
    int guard = 0;
    while (expo(lo) > floor_level) {
        lo -= step;
        step *= 1.5;
        if (++guard > 300) throw QuadratureFailure("gamma_j: left tail not found");
    }
    step = 1.0;
    guard = 0;
    while (expo(hi) > floor_level) {
        hi += step;
        step *= 1.5;
        if (++guard > 300) throw QuadratureFailure("gamma_j: right tail not found");
    }

    // factor out e^{peak}: integrand p_j(x) e^{n(ax - V(x)) - peak}
    std::vector<double> pvals(j + 1);
    auto f = [&](double x) {
        basis.p_all(j, x, pvals.data());
        return pvals[j] * std::exp(expo(x) - peak);
    };
    const double val = adaptive_integrate(f, lo, hi, 1e-14, 1e-13);
    return val * std::exp(peak);
}

}  // namespace rmt
