// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rmt/potential.hpp"

namespace rmt {

// One-cut equilibrium measure of a confining polynomial potential.
//
// The density factorizes as Psi(x) = sqrt((x-lo)(hi-x)) Qt(x) / (2 pi) with
// Qt polynomial, so every derived quantity reduces to Chebyshev machinery:
// the endpoints solve the two moment conditions
//     int_J V'(s) ds / sqrt((s-lo)(hi-s)) = 0,
//     int_J s V'(s) ds / sqrt(...)        = 2 pi,
// and the log-potential has an exact cosine-series evaluation both outside
// and inside the support.
class EquilibriumData {
  public:
    double left_endpoint() const { return lo_; }
    double right_endpoint() const { return hi_; }
    double robin_constant() const { return ell_; }
    double beta() const { return beta_; }
    const Potential& potential() const { return pot_; }

    // density on [lo, hi] (0 outside)
    double psi(double x) const;
    // total mass by the series (should be 1)
    double mass() const;

    // g(x) = int log(x - s) Psi(s) ds for x >= right endpoint
    double g(double x) const;
    double g_prime(double x) const;   // x >= hi (one-sided at the edge)
    double g_second(double x) const;  // x > hi

    // log-potential int log|x - s| Psi(s) ds inside the support
    double log_potential_interior(double x) const;

    // effective-potential value V(x) - 2 g(x) - ell for x > hi (>= 0 when
    // the one-cut ansatz is globally valid)
    double effective_potential_right(double x) const;

  private:
    friend EquilibriumData solve_equilibrium(const Potential&,
                                             std::optional<std::pair<double, double>>);
    Potential pot_ = Potential::gaussian();
    double lo_ = 0.0, hi_ = 0.0;       // support endpoints
    double mid_ = 0.0, half_ = 0.0;    // interval center / half-width
    double ell_ = 0.0, beta_ = 0.0;
    std::vector<double> qt_;           // Qt coefficients, ascending
    std::vector<double> cos_coeffs_;   // cosine series of sin^2(th) Qt(m+r cos th)/(2 pi)
};

// Solves the one-cut endpoint equations by damped Newton (tolerance 1e-12),
// builds the density and log-potential series, and validates the result.
// Default initial bracket: +-(max modulus of V' roots + 1); multi-well
// potentials whose measure sits in one well need an explicit bracket.
// Throws NonConfining, NoConvergence, or MultiCut (Psi < 0 inside).
EquilibriumData solve_equilibrium(const Potential& pot,
                                  std::optional<std::pair<double, double>> init = std::nullopt);

// g evaluated through the public operation contract (DomainError if x < e).
double g_func(const EquilibriumData& eq, double x);

}  // namespace rmt
