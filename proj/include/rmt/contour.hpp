// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace rmt {

// Metadata of a contour evaluation of C_alpha.
struct ContourEval {
    double alpha = 0.0;
    double ray_angle = 0.5235987755982988;  // pi/6, fixed
    int node_count = 0;
    bool indented = false;       // origin bypassed by the radius-0.1 arc
    bool residue_added = false;  // never: the indentation keeps the pole side
};

// C_alpha(xi) = (1/2pi) int e^{i z^3/3 + i xi z} dz / (alpha + i z), taken
// over the rays from inf e^{5 pi i/6} to inf e^{pi i/6} through the origin.
// The integrand's pole sits at z = i alpha; when it comes within 0.1 of the
// contour (small |alpha|) the origin is bypassed by a semicircular arc of
// radius 0.1 on the side away from the pole (below for alpha >= 0), so at
// alpha = 0 the pole stays above the contour, the function continues the
// alpha > 0 side, and no residue term is ever picked up.  The result is
// real; the imaginary part must vanish to 1e-10 and is discarded.
//
// Domain: |alpha| <= 10, |xi| <= 40.
double c_alpha(double xi, double alpha);

// Same, with an explicit per-panel node count (node-doubling checks).
double c_alpha(double xi, double alpha, int nodes_per_panel, ContourEval* info = nullptr);

namespace detail {
// xi > 40 underflows superexponentially; operator discretizations use this
// clipped variant for their far transformed nodes.
double c_alpha_clipped(double xi, double alpha);
}  // namespace detail

}  // namespace rmt
