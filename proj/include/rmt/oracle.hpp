// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

#include "rmt/finite_ensemble.hpp"
#include "rmt/potential.hpp"

namespace rmt {

// Independent brute-force route for E[prod (1 - s chi_E(lambda_i))]:
// tensor Gauss-Legendre quadrature of the joint eigenvalue density
//     Delta(lambda) det[N(lambda)] prod e^{-n V(lambda_i)} / Z'
// where N carries the spike rows e^{n a_k lambda_j} (stabilized by per-row
// max subtraction) and the confluent monomial rows for the zero block.
// This path never touches the orthogonal-polynomial machinery, so it
// cross-checks both determinantal routes.  Practical for d <= 3.
std::complex<double> brute_force_expectation(const Potential& pot, int n, int d,
                                             const std::vector<double>& a_list, const SetE& E,
                                             std::complex<double> s, int nodes_per_dim = 60);

}  // namespace rmt
