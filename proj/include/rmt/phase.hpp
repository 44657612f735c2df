// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include "rmt/equilibrium.hpp"

namespace rmt {

// G(x;a) = g(x) - V(x) + a x   on [e, inf)
// H(x;a) = -g(x) + a x + ell   on [e, inf), convex in x
double big_G(const EquilibriumData& eq, double x, double a);
double big_H(const EquilibriumData& eq, double x, double a);
double big_G_prime(const EquilibriumData& eq, double x, double a);
double big_G_second(const EquilibriumData& eq, double x, double a);
double big_H_second(const EquilibriumData& eq, double x);

// argmin of H(.;a) over [e, inf); equals e when H'(e+) = a - g'(e) >= 0
double c_of_a(const EquilibriumData& eq, double a);

struct CriticalValue {
    double a_c = 0.0;
    bool is_continuous = false;  // a_c == V'(e)/2 within 1e-8
};

// Critical spike strength: the infimum of a for which some xbar > c(a) has
// G(xbar;a) > H(c(a);a).  The comparison signal is linear in a at a jump
// transition, so bisection localizes it sharply; if no crossing occurs
// below V'(e)/2 the transition is continuous and a_c = V'(e)/2 exactly.
CriticalValue critical_ac(const EquilibriumData& eq, double a_min = 1e-3);

struct OutlierLocation {
    double x0 = 0.0;
    double second_deriv = 0.0;  // G''(x0; a) < 0
    bool is_secondary_critical = false;
    double x1 = 0.0, x2 = 0.0;  // tied maxima when is_secondary_critical
};

// Global maximizer of G(.;a) on [c(a), inf) for a > a_c, by multi-start
// grid scan plus golden-section refinement.  Throws FlatMaximum when
// |G''(x0)| < 1e-6; reports near-ties within 1e-9 (1+|G|) as secondary
// critical.
OutlierLocation x0_of_a(const EquilibriumData& eq, double a);

struct SecondaryCritical {
    double a_star = 0.0;
    double x1 = 0.0, x2 = 0.0;  // tied maximizer locations, x1 < x2
    double gap = 0.0;           // |G(x1) - G(x2)| after refinement
};

// Scans [a_lo, a_hi] for spike values where two local maxima of G exchange
// dominance; each sign change of the height gap is refined by bisection.
// Convex-beyond-edge potentials yield the empty list.
std::vector<SecondaryCritical> scan_secondary_criticals(const EquilibriumData& eq, double a_lo,
                                                        double a_hi, int grid_n = 120);

struct PhasePortrait {
    double a_c = 0.0;
    bool is_continuous_transition = false;
    std::function<double(double)> c_map;
    std::function<double(double)> x0_map;
    std::vector<SecondaryCritical> secondary_criticals;
};

PhasePortrait phase_portrait(const EquilibriumData& eq, double a_max = 5.0);

}  // namespace rmt
