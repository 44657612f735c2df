// SPDX-License-Identifier: Apache-2.0
#include "rmt/moments.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "rmt/quadrature.hpp"

using namespace rmt;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// quadrature oracle for int x^{i-1} e^{-x^2/2 + a x} (1 - s chi_{(T,inf)}) dx
std::complex<double> oracle(int i, double alpha, double T, std::complex<double> s) {
    auto mono = [&](double x) { return std::pow(x, i - 1) * std::exp(-0.5 * x * x + alpha * x); };
    const double lo = alpha - 14.0, hi = alpha + 14.0;
    const double full = adaptive_integrate(mono, lo, hi, 1e-13, 1e-13);
    double tail = 0.0;
    if (T < hi) tail = adaptive_integrate(mono, std::max(T, lo), hi, 1e-13, 1e-13);
    return full - s * tail;
}
}  // namespace

TEST_CASE("gaussian normalization and symmetry") {
    CHECK(std::abs(spiked_moment(1, 0.0, -kInf, 0.0) - std::sqrt(2.0 * M_PI)) < 1e-14);
    CHECK(std::abs(spiked_moment(1, 0.0, 0.0, 1.0) - 0.5 * std::sqrt(2.0 * M_PI)) < 1e-14);
}

TEST_CASE("shifted first moment closed form") {
    const std::complex<double> v = spiked_moment(2, 1.0, -kInf, 0.0);
    CHECK(std::abs(v - std::sqrt(2.0 * M_PI) * std::exp(0.5)) < 1e-12);
    CHECK(v.real() == doctest::Approx(4.13273).epsilon(1e-5));
}

TEST_CASE("recursion against adaptive quadrature on random inputs") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> Ua(-3.0, 3.0), UT(-4.0, 4.0), Us(0.0, 1.0);
    std::uniform_int_distribution<int> Ui(1, 8);
    for (int rep = 0; rep < 30; ++rep) {
        const int i = Ui(rng);
        const double a = Ua(rng), T = UT(rng);
        const std::complex<double> s(Us(rng), 0.3 * Us(rng));
        const std::complex<double> got = spiked_moment(i, a, T, s);
        const std::complex<double> want = oracle(i, a, T, s);
        CHECK(std::abs(got - want) < 1e-10 * (1.0 + std::abs(want)));
    }
}

TEST_CASE("tail recursion identity with the boundary term") {
    // t_{i+1} = a t_i + (i-1) t_{i-1} + T^{i-1} phi(T - a)
    const double a = 0.7, T = 1.3;
    const auto t = detail::tail_moments_normalized(a, T, 6);
    const double dens = std::exp(-0.5 * (T - a) * (T - a)) / std::sqrt(2.0 * M_PI);
    for (int i = 1; i < 5; ++i) {
        const double lhs = t[i];  // t_{i+1} in 1-based indexing
        const double rhs = a * t[i - 1] + (i - 1) * (i >= 2 ? t[i - 2] : 0.0) +
                           std::pow(T, i - 1) * dens;
        CHECK(std::abs(lhs - rhs) < 1e-14);
    }
}
