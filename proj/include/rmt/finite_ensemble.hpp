// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <limits>
#include <vector>

#include "rmt/ortho_basis.hpp"

namespace rmt {

// Finite union of intervals (hi may be +inf, lo may be -inf).
struct SetE {
    std::vector<std::pair<double, double>> intervals;

    static SetE half_line(double x_lo) {
        return SetE{{{x_lo, std::numeric_limits<double>::infinity()}}};
    }
    static SetE real_line() {
        return SetE{{{-std::numeric_limits<double>::infinity(),
                      std::numeric_limits<double>::infinity()}}};
    }
    bool contains(double x) const {
        for (const auto& [lo, hi] : intervals)
            if (x > lo && x < hi) return true;
        return false;
    }
};

// Restriction Gram matrix int_E psi_i psi_j for i, j < d, with symmetric
// eigenvalues in [0, 1] (projection of an orthonormal family).
struct GramRestriction {
    Eigen::MatrixXd G;
    SetE set;
};

GramRestriction gram_restriction(const OrthoBasis& basis, int d, const SetE& E);

// Rank-m spike data: the moment matrix B_{jk} = Gamma_{d-m+j-1}(a_k) that
// couples the top basis functions t = (psi_{d-m}..psi_{d-1}) to the
// exponential family v_k = e^{n(a_k x - V/2)}.
struct SpikedKernelData {
    std::vector<double> spikes;
    Eigen::MatrixXd B;
    double condition_number = 0.0;
};

SpikedKernelData build_spiked_kernel(const OrthoBasis& basis, int d,
                                     const std::vector<double>& a_list);

// E[prod (1 - s chi_E(xi_j))] for the unspiked d-dimensional ensemble:
// exact finite-rank reduction det(I_d - s Gram_E).
std::complex<double> expectation_null(const OrthoBasis& basis, int d, const SetE& E,
                                      std::complex<double> s);

// Rank-one spiked expectation at dimension d via the kernel perturbation
//   K~_d = K_{d-1} + psi~_{d-1} (x) psi_{d-1},
// reduced to (d-1)-dimensional linear algebra plus the Gamma integrals.
std::complex<double> expectation_rank_one(const OrthoBasis& basis, int d, double a, const SetE& E,
                                          std::complex<double> s);

// Rank-m spiked expectation, direct route: det(I_d - s C) where C is the
// restriction matrix of the rank-m-perturbed kernel
//   K~_d = K_d + sum_j w^_j (x) (B^{-1} t^)_j,  w^ = (1 - K_d) v^.
std::complex<double> expectation_rank_m_direct(const OrthoBasis& basis, int d,
                                               const std::vector<double>& a_list, const SetE& E,
                                               std::complex<double> s);

// Rank-m spiked expectation, identity route: the ratio of m x m
// determinants of Gamma-weighted rank-one expectations at dimensions
// d-j+1, multiplied back by the unspiked expectation at dimension d.
std::complex<double> expectation_rank_m_identity(const OrthoBasis& basis, int d,
                                                 const std::vector<double>& a_list, const SetE& E,
                                                 std::complex<double> s);

// P(no more than j-1 eigenvalues in E) by Cauchy-circle s-derivatives at
// s = 1 of the direct route (j <= 4).
double gap_prob(const OrthoBasis& basis, int d, const std::vector<double>& a_list, const SetE& E,
                int j);

}  // namespace rmt
