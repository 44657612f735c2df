// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rmt/potential.hpp"

namespace rmt {

// Eigenvalue samples of the spiked ensemble: one descending-sorted array of
// length n per trial.
struct SampleBatch {
    int n = 0;
    std::vector<double> spikes;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::string method;  // "exact" | "mcmc"
    std::uint32_t thin = 1;
    std::vector<double> eigenvalues;  // trials * n, row-major, sorted descending

    const double* trial(std::uint64_t t) const { return eigenvalues.data() + t * n; }
    double eig(std::uint64_t t, int k) const { return trial(t)[k]; }  // k = 0 is the largest

    void save(const std::string& path) const;  // little-endian binary
    static SampleBatch load(const std::string& path);
    void write_csv(std::ostream& os) const;
};

// Exact sampler for the Gaussian potential: M = diag(spikes, 0...) + G with
// G drawn from the n-scaled GUE (diagonal N(0, 1/n), off-diagonal complex
// with real/imag variance 1/(2n)).  Trials run on a thread pool; every
// trial derives its own RNG stream from (seed, trial index), so results are
// bit-identical for a fixed seed regardless of thread count.
SampleBatch sample_gaussian_spiked(int n, const std::vector<double>& a_list, std::uint64_t trials,
                                   std::uint64_t seed);

// Random-walk Metropolis on the joint eigenvalue density for a general
// confining potential (desk scale, n <= 60).  Four chains with burn-in,
// per-coordinate proposals adapted to a 0.25-0.4 acceptance rate, and a
// split-Rhat diagnostic on the top eigenvalue (> 1.1 raises
// NonConvergence).  `steps` counts full sweeps per chain.
SampleBatch sample_general_mcmc(const Potential& pot, int n, const std::vector<double>& a_list,
                                std::uint64_t trials, std::uint64_t steps, std::uint64_t seed);

struct RescaledStatistic {
    int k = 0;  // eigenvalue index, 1 = largest
    std::string centering;
    std::vector<double> values;
};

// Edge scaling (xi_k - e) beta n^{2/3}.
RescaledStatistic rescale_edge(const SampleBatch& batch, int k, double e, double beta);
// Outlier scaling (xi_k - x_star) sqrt(-G''(x_star) n); BadScale if the
// curvature is not negative.
RescaledStatistic rescale_outlier(const SampleBatch& batch, int k, double x_star,
                                  double g_second);

// sup-norm distance between the empirical CDF of the sample and `cdf`.
double ks_distance(const std::vector<double>& sample, const std::function<double(double)>& cdf);

}  // namespace rmt
