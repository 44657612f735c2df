// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <vector>

namespace rmt {

// Nodes and positive weights of a quadrature rule on a finite interval.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::string interval;  // descriptor, e.g. "[0,1]"

    double apply(const std::function<double(double)>& f) const {
        double s = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
        return s;
    }
};

// Gauss–Legendre rule with n nodes on [a,b]; exact for polynomials of
// degree <= 2n-1.  Throws InvalidInterval unless n >= 1 and a < b.
QuadratureRule gauss_legendre(int n, double a, double b);

// Composite Gauss–Legendre rule: per-panel n-point rules over the given
// breakpoints (ascending).
QuadratureRule composite_gauss_legendre(int n_per_panel, const std::vector<double>& breaks);

// Adaptive Gauss–Legendre integration of f on [a,b] by panel bisection
// (15/31-point pair per panel).  Used mostly by oracles and Gamma integrals.
double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-12, double rel_tol = 1e-12, int max_depth = 30);

}  // namespace rmt
