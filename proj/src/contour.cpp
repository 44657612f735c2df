// SPDX-License-Identifier: Apache-2.0
#include "rmt/contour.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "rmt/detail/ray_panels.hpp"
#include "rmt/errors.hpp"
#include "rmt/quadrature.hpp"

namespace rmt {

namespace {

constexpr double kIndentRadius = 0.1;
constexpr double kIndentThreshold = 0.12;  // |alpha| below which the arc is used
constexpr double kMinPoleDistance = 0.05;

using cplx = std::complex<double>;

cplx integrand(cplx z, double xi, double alpha) {
    const cplx i(0.0, 1.0);
    return std::exp(detail::cubic_phase(z, xi)) / (alpha + i * z);
}

}  // namespace

double c_alpha(double xi, double alpha, int nodes_per_panel, ContourEval* info) {
    if (std::abs(alpha) > 10.0) throw DomainError("c_alpha: |alpha| > 10");
    if (std::abs(xi) > 40.0) throw DomainError("c_alpha: |xi| > 40");

    const bool indent = std::abs(alpha) < kIndentThreshold;
    const double r0 = indent ? kIndentRadius : 0.0;
    const cplx dir = std::polar(1.0, M_PI / 6.0);
    const cplx i(0.0, 1.0);

    // Radial panels, with the inner disc removed when indenting.
    std::vector<double> breaks;
    breaks.push_back(r0);
    for (double b : detail::kRayBreaks)
        if (b > r0) breaks.push_back(b);
    const QuadratureRule rays = composite_gauss_legendre(nodes_per_panel, breaks);

    // Paired rays collapse to 2 Re of the pi/6 ray (conjugate symmetry).
    double real_part = 0.0;
    int node_count = 0;
    for (std::size_t k = 0; k < rays.nodes.size(); ++k) {
        const cplx z = rays.nodes[k] * dir;
        real_part += rays.weights[k] * 2.0 * (integrand(z, xi, alpha) * dir).real();
        ++node_count;
    }

    double imag_part = 0.0;
    if (indent) {
        // Semicircular arc of radius 0.1 around the origin, on the side away
        // from the pole z = i alpha: below the origin for alpha >= 0 (theta
        // running 5pi/6 -> 13pi/6), above for alpha < 0 (5pi/6 -> pi/6).
        const double th_lo = 5.0 * M_PI / 6.0;
        const double th_hi = alpha >= 0.0 ? 13.0 * M_PI / 6.0 : M_PI / 6.0;
        const QuadratureRule arc =
            gauss_legendre(4 * nodes_per_panel, std::min(th_lo, th_hi), std::max(th_lo, th_hi));
        const double sign = th_hi > th_lo ? 1.0 : -1.0;
        for (std::size_t k = 0; k < arc.nodes.size(); ++k) {
            const cplx z = std::polar(kIndentRadius, arc.nodes[k]);
            if (std::abs(z - i * alpha) < kMinPoleDistance)
                throw PoleTooClose("c_alpha: indentation cannot keep clear of the pole");
            const cplx dz = kIndentRadius * i * std::polar(1.0, arc.nodes[k]);
            const cplx v = sign * arc.weights[k] * integrand(z, xi, alpha) * dz;
            real_part += v.real();
            imag_part += v.imag();
            ++node_count;
        }
    }

    const double scale = std::max(1.0, std::abs(real_part));
    if (std::abs(imag_part) > 1e-10 * scale * 2.0 * M_PI)
        throw Divergence("c_alpha: imaginary residual exceeds 1e-10");

    if (info) {
        info->alpha = alpha;
        info->node_count = node_count;
        info->indented = indent;
        info->residue_added = false;
    }
    return real_part / (2.0 * M_PI);
}

double c_alpha(double xi, double alpha) { return c_alpha(xi, alpha, detail::kRayNodesPerPanel); }

namespace detail {

double c_alpha_clipped(double xi, double alpha) {
    if (xi > 40.0) return 0.0;
    return c_alpha(xi, alpha);
}

}  // namespace detail

}  // namespace rmt
