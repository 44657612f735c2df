// SPDX-License-Identifier: Apache-2.0
#include "rmt/sampler.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

#include "doctest.h"
#include "rmt/equilibrium.hpp"
#include "rmt/quadrature.hpp"
#include "rmt/errors.hpp"
#include "rmt/finite_ensemble.hpp"
#include "rmt/limit_laws.hpp"
#include "rmt/phase.hpp"

using namespace rmt;

namespace {

double mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}
double stddev(const std::vector<double>& v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / (v.size() - 1.0));
}

// CDF of the equilibrium measure tabulated by quadrature
LawCurve density_cdf(const EquilibriumData& eq) {
    LawCurve c;
    const double lo = eq.left_endpoint(), hi = eq.right_endpoint();
    const int npts = 400;
    double acc = 0.0;
    c.grid.push_back(lo);
    c.values.push_back(0.0);
    for (int i = 1; i <= npts; ++i) {
        const double a = lo + (hi - lo) * (i - 1.0) / npts;
        const double b = lo + (hi - lo) * static_cast<double>(i) / npts;
        acc += adaptive_integrate([&](double x) { return eq.psi(x); }, a, b, 1e-10, 1e-10);
        c.grid.push_back(b);
        c.values.push_back(std::min(acc, 1.0));
    }
    return c;
}

}  // namespace

TEST_CASE("shapes, ordering, and seed determinism") {
    const SampleBatch one = sample_gaussian_spiked(6, {1.0}, 1, 99);
    CHECK(one.trials == 1);
    CHECK(one.eigenvalues.size() == 6);
    for (int i = 0; i + 1 < 6; ++i) CHECK(one.eig(0, i) >= one.eig(0, i + 1));

    const SampleBatch a = sample_gaussian_spiked(20, {0.7}, 50, 1234);
    const SampleBatch b = sample_gaussian_spiked(20, {0.7}, 50, 1234);
    CHECK(a.eigenvalues == b.eigenvalues);  // bit-identical
    const SampleBatch c = sample_gaussian_spiked(20, {0.7}, 50, 1235);
    CHECK(a.eigenvalues != c.eigenvalues);
}

TEST_CASE("unspiked spectrum follows the semicircle") {
    const EquilibriumData eq = solve_equilibrium(Potential::gaussian());
    const LawCurve cdf = density_cdf(eq);
    const SampleBatch batch = sample_gaussian_spiked(200, {}, 2000, 7);
    std::vector<double> pooled(batch.eigenvalues.begin(), batch.eigenvalues.end());
    const double ks = ks_distance(pooled, [&](double x) { return cdf.interpolate(x); });
    CHECK(ks < 0.03);
}

TEST_CASE("supercritical spike relocates the top eigenvalue to x0") {
    const SampleBatch batch = sample_gaussian_spiked(200, {2.0}, 2000, 11);
    std::vector<double> tops;
    for (std::uint64_t t = 0; t < batch.trials; ++t) tops.push_back(batch.eig(t, 0));
    const double se = stddev(tops) / std::sqrt(static_cast<double>(tops.size()));
    CHECK(std::abs(mean(tops) - 2.5) < 4.0 * (se + 0.5 / 200.0));
}

TEST_CASE("exact-sampler CDF against the finite-n determinant") {
    const SampleBatch batch = sample_gaussian_spiked(2, {0.5}, 200000, 21);
    const OrthoBasis basis = build_basis(Potential::gaussian(), 2, 6);
    for (double x : {0.5, 1.5}) {
        std::uint64_t below = 0;
        for (std::uint64_t t = 0; t < batch.trials; ++t) below += batch.eig(t, 0) < x;
        const double emp = static_cast<double>(below) / batch.trials;
        const double pred = gap_prob(basis, 2, {0.5}, SetE::half_line(x), 1);
        const double se = std::sqrt(pred * (1.0 - pred) / batch.trials);
        CHECK(std::abs(emp - pred) < 3.0 * se + 1e-12);
    }
}

TEST_CASE("spike order does not matter (unitary invariance)") {
    const SampleBatch ab = sample_gaussian_spiked(60, {1.5, 0.8}, 1500, 31);
    const SampleBatch ba = sample_gaussian_spiked(60, {0.8, 1.5}, 1500, 32);
    std::vector<double> ta, tb;
    for (std::uint64_t t = 0; t < ab.trials; ++t) {
        ta.push_back(ab.eig(t, 0));
        tb.push_back(ba.eig(t, 0));
    }
    const double se = std::hypot(stddev(ta) / std::sqrt(1500.0), stddev(tb) / std::sqrt(1500.0));
    CHECK(std::abs(mean(ta) - mean(tb)) < 4.0 * se);
}

TEST_CASE("mcmc agrees with the exact sampler on a spiked gaussian") {
    const SampleBatch ex = sample_gaussian_spiked(30, {1.8}, 3000, 41);
    const SampleBatch mc =
        sample_general_mcmc(Potential::gaussian(), 30, {1.8}, 600, 6000, 42);
    std::vector<double> te, tm;
    for (std::uint64_t t = 0; t < ex.trials; ++t) te.push_back(ex.eig(t, 0));
    for (std::uint64_t t = 0; t < mc.trials; ++t) tm.push_back(mc.eig(t, 0));
    // thinned chains still carry autocorrelation; allow an effective-sample
    // deflation factor in the error budget
    const double se_e = stddev(te) / std::sqrt(static_cast<double>(te.size()));
    const double se_m = 3.0 * stddev(tm) / std::sqrt(static_cast<double>(tm.size()));
    CHECK(std::abs(mean(te) - mean(tm)) < 3.0 * std::hypot(se_e, se_m));
}

TEST_CASE("mcmc bulk matches the quartic equilibrium density") {
    const Potential quartic = Potential::polynomial({0, 0, 0, 0, 0.25});
    const EquilibriumData eq = solve_equilibrium(quartic);
    const LawCurve cdf = density_cdf(eq);
    const SampleBatch mc = sample_general_mcmc(quartic, 30, {}, 800, 6000, 51);
    std::vector<double> pooled(mc.eigenvalues.begin(), mc.eigenvalues.end());
    const double ks = ks_distance(pooled, [&](double x) { return cdf.interpolate(x); });
    CHECK(ks < 0.08);
}

TEST_CASE("mcmc guards") {
    CHECK_THROWS_AS(sample_general_mcmc(Potential::gaussian(), 10, {}, 100, 0, 1),
                    NonConvergence);
}

TEST_CASE("rescaling") {
    SampleBatch batch;
    batch.n = 3;
    batch.trials = 2;
    batch.eigenvalues = {2.5, 1.0, 0.5, 2.6, 1.1, 0.4};
    const RescaledStatistic edge = rescale_edge(batch, 1, 2.0, 1.0);
    CHECK(edge.values[0] == doctest::Approx(0.5 * std::pow(3.0, 2.0 / 3.0)));
    const RescaledStatistic out = rescale_outlier(batch, 1, 2.5, -4.0 / 3.0);
    CHECK(out.values[0] == doctest::Approx(0.0));
    CHECK(out.values[1] == doctest::Approx(0.1 * std::sqrt(4.0)));
    // affine invariance of the outlier mode
    SampleBatch shifted = batch;
    for (double& x : shifted.eigenvalues) x += 0.7;
    const RescaledStatistic out2 = rescale_outlier(shifted, 1, 2.5 + 0.7, -4.0 / 3.0);
    for (std::size_t i = 0; i < out.values.size(); ++i)
        CHECK(std::abs(out.values[i] - out2.values[i]) < 1e-12);
    CHECK_THROWS_AS(rescale_outlier(batch, 1, 2.5, 0.1), BadScale);
}

TEST_CASE("edge statistics of the spiked model against the limit laws") {
    // subcritical spike: Tracy-Widom at the edge; modest n keeps this a
    // smoke-level comparison with the budgeted tolerance
    const SampleBatch batch = sample_gaussian_spiked(400, {0.5}, 1500, 61);
    const RescaledStatistic st = rescale_edge(batch, 1, 2.0, 1.0);
    LawCurve tw;
    for (double T = -11.0; T <= 6.01; T += 0.25) {
        tw.grid.push_back(T);
        tw.values.push_back(tw_jth(T, 1));
    }
    const double ks = ks_distance(st.values, [&](double T) { return tw.interpolate(T); });
    CHECK(ks < 0.12);
}

TEST_CASE("ks distance basics") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<double> unif(100000);
    for (double& v : unif) v = U(rng);
    CHECK(ks_distance(unif, [](double x) { return std::clamp(x, 0.0, 1.0); }) < 0.01);
    CHECK(ks_distance(unif, [](double) { return 0.5; }) >= 0.5);
    CHECK(ks_distance({0.0}, [](double x) { return x < 0.0 ? 0.0 : 0.5; }) ==
          doctest::Approx(0.5));
}

TEST_CASE("binary batch round trip") {
    const SampleBatch a = sample_gaussian_spiked(8, {0.9, -0.4}, 25, 81);
    const std::string path = "batch_roundtrip.rmts";
    a.save(path);
    const SampleBatch b = SampleBatch::load(path);
    std::remove(path.c_str());
    CHECK(a.n == b.n);
    CHECK(a.spikes == b.spikes);
    CHECK(a.seed == b.seed);
    CHECK(a.trials == b.trials);
    CHECK(a.method == b.method);
    CHECK(a.eigenvalues == b.eigenvalues);
}
