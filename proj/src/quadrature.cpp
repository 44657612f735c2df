// SPDX-License-Identifier: Apache-2.0
#include "rmt/quadrature.hpp"

#include <cmath>
#include <sstream>

#include "rmt/errors.hpp"

namespace rmt {

namespace {

// Nodes of the n-point rule on [-1,1] by Newton iteration on P_n, seeded
// with the Chebyshev-based estimate.  Weights w = 2/((1-x^2) P_n'(x)^2).
void legendre_nodes(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

}  // namespace

QuadratureRule gauss_legendre(int n, double a, double b) {
    if (n < 1 || !(a < b)) throw InvalidInterval("gauss_legendre: need n >= 1 and a < b");
    std::vector<double> x, w;
    legendre_nodes(n, x, w);
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = mid + half * x[i];
        rule.weights[i] = half * w[i];
    }
    std::ostringstream os;
    os << "[" << a << "," << b << "]";
    rule.interval = os.str();
    return rule;
}

QuadratureRule composite_gauss_legendre(int n_per_panel, const std::vector<double>& breaks) {
    if (breaks.size() < 2) throw InvalidInterval("composite_gauss_legendre: need >= 2 breakpoints");
    QuadratureRule rule;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
        QuadratureRule panel = gauss_legendre(n_per_panel, breaks[k], breaks[k + 1]);
        rule.nodes.insert(rule.nodes.end(), panel.nodes.begin(), panel.nodes.end());
        rule.weights.insert(rule.weights.end(), panel.weights.begin(), panel.weights.end());
    }
    std::ostringstream os;
    os << "[" << breaks.front() << "," << breaks.back() << "]";
    rule.interval = os.str();
    return rule;
}

namespace {

double panel_integrate(const std::function<double(double)>& f, double a, double b,
                       const QuadratureRule& lo, const QuadratureRule& hi,
                       double tol, int depth, int max_depth) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s_lo = 0.0, s_hi = 0.0;
    for (std::size_t i = 0; i < lo.nodes.size(); ++i)
        s_lo += half * lo.weights[i] * f(mid + half * lo.nodes[i]);
    for (std::size_t i = 0; i < hi.nodes.size(); ++i)
        s_hi += half * hi.weights[i] * f(mid + half * hi.nodes[i]);
    if (std::abs(s_hi - s_lo) <= tol || depth >= max_depth) return s_hi;
    return panel_integrate(f, a, mid, lo, hi, 0.5 * tol, depth + 1, max_depth) +
           panel_integrate(f, mid, b, lo, hi, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, double rel_tol, int max_depth) {
    if (!(a < b)) {
        if (a == b) return 0.0;
        throw InvalidInterval("adaptive_integrate: a > b");
    }
    static const QuadratureRule lo = gauss_legendre(15, -1.0, 1.0);
    static const QuadratureRule hi = gauss_legendre(31, -1.0, 1.0);
    double rough = 0.0;
    for (std::size_t i = 0; i < hi.nodes.size(); ++i)
        rough += 0.5 * (b - a) * hi.weights[i] * f(0.5 * (a + b) + 0.5 * (b - a) * hi.nodes[i]);
    double tol = std::max(abs_tol, rel_tol * std::abs(rough));
    return panel_integrate(f, a, b, lo, hi, tol, 0, max_depth);
}

}  // namespace rmt
