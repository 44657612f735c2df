// SPDX-License-Identifier: Apache-2.0
#include "rmt/oracle.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "rmt/errors.hpp"
#include "rmt/quadrature.hpp"

namespace rmt {

namespace {

// exponent envelope over all spike values (and the unspiked weight)
double envelope(const Potential& pot, int n, const std::vector<double>& a_list, double x) {
    double best = -n * pot.V(x);
    for (double a : a_list) best = std::max(best, n * (a * x - pot.V(x)));
    return best;
}

}  // namespace

std::complex<double> brute_force_expectation(const Potential& pot, int n, int d,
                                             const std::vector<double>& a_list, const SetE& E,
                                             std::complex<double> s, int nodes_per_dim) {
    if (d < 1 || d > 3) throw DomainError("brute_force_expectation: d must be 1..3");
    const int m = static_cast<int>(a_list.size());
    if (m > d) throw DomainError("brute_force_expectation: rank above dimension");

    // truncation: envelope within 41.5 of its peak (weight >= 1e-18 rel)
    double peak = -1e300, x_peak = 0.0;
    for (double x = -30.0; x <= 30.0; x += 0.01) {
        const double v = envelope(pot, n, a_list, x);
        if (v > peak) {
            peak = v;
            x_peak = x;
        }
    }
    double lo = x_peak, hi = x_peak;
    while (envelope(pot, n, a_list, lo) > peak - 41.5) lo -= 0.05;
    while (envelope(pot, n, a_list, hi) > peak - 41.5) hi += 0.05;

    const QuadratureRule rule = gauss_legendre(nodes_per_dim, lo, hi);
    const int nn = nodes_per_dim;

    // per-row reference shifts for the exponential rows
    std::vector<double> ref(m);
    for (int k = 0; k < m; ++k) ref[k] = a_list[k] > 0 ? hi : lo;

    std::vector<double> wexp(nn);
    for (int q = 0; q < nn; ++q) wexp[q] = std::exp(-n * pot.V(rule.nodes[q]));

    Eigen::MatrixXd N(d, d);
    std::vector<int> idx(d, 0);
    std::complex<double> num = 0.0;
    double den = 0.0;
    while (true) {
        double wprod = 1.0;
        for (int i = 0; i < d; ++i) wprod *= rule.weights[idx[i]] * wexp[idx[i]];
        double vdm = 1.0;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) vdm *= rule.nodes[idx[i]] - rule.nodes[idx[j]];
        if (wprod != 0.0 && vdm != 0.0) {
            for (int j = 0; j < d; ++j) {
                const double x = rule.nodes[idx[j]];
                for (int k = 0; k < m; ++k) N(k, j) = std::exp(n * a_list[k] * (x - ref[k]));
                double pw = 1.0;
                for (int i = 0; i < d - m; ++i) {
                    N(m + i, j) = pw;
                    pw *= x;
                }
            }
            const double detN = N.determinant();
            const double density = vdm * detN * wprod;
            std::complex<double> spro = 1.0;
            for (int i = 0; i < d; ++i)
                if (E.contains(rule.nodes[idx[i]])) spro *= (1.0 - s);
            num += density * spro;
            den += density;
        }
        int c = 0;
        while (c < d && ++idx[c] == nn) idx[c++] = 0;
        if (c == d) break;
    }
    if (den == 0.0) throw QuadratureFailure("brute_force_expectation: vanishing normalization");
    return num / den;
}

}  // namespace rmt
