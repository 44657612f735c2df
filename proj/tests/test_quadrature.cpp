// SPDX-License-Identifier: Apache-2.0
#include "rmt/quadrature.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "rmt/errors.hpp"

using namespace rmt;

TEST_CASE("one-point rule is the midpoint rule on [-1,1]") {
    const QuadratureRule r = gauss_legendre(1, -1.0, 1.0);
    REQUIRE(r.nodes.size() == 1);
    CHECK(r.nodes[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(r.weights[0] == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("degree-4 monomial integrates exactly with n = 5 on [0,1]") {
    const QuadratureRule r = gauss_legendre(5, 0.0, 1.0);
    const double v = r.apply([](double x) { return x * x * x * x; });
    CHECK(std::abs(v - 0.2) < 1e-14);
}

TEST_CASE("exp decay on [0,10] with 40 nodes") {
    const QuadratureRule r = gauss_legendre(40, 0.0, 10.0);
    const double v = r.apply([](double x) { return std::exp(-x); });
    CHECK(std::abs(v - (1.0 - std::exp(-10.0))) < 1e-12);
}

TEST_CASE("weights sum to the interval length") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-5.0, 5.0);
    for (int rep = 0; rep < 20; ++rep) {
        double a = U(rng), b = U(rng);
        if (a > b) std::swap(a, b);
        if (b - a < 0.1) b = a + 0.1;
        const int n = 1 + static_cast<int>(rng() % 60);
        const QuadratureRule r = gauss_legendre(n, a, b);
        double sum = 0.0;
        for (double w : r.weights) sum += w;
        CHECK(std::abs(sum - (b - a)) < 1e-13 * (1.0 + b - a));
        for (std::size_t i = 0; i + 1 < r.nodes.size(); ++i) CHECK(r.nodes[i] < r.nodes[i + 1]);
        for (double w : r.weights) CHECK(w > 0.0);
    }
}

TEST_CASE("invalid intervals are rejected") {
    CHECK_THROWS_AS(gauss_legendre(0, 0.0, 1.0), InvalidInterval);
    CHECK_THROWS_AS(gauss_legendre(5, 1.0, 1.0), InvalidInterval);
    CHECK_THROWS_AS(gauss_legendre(5, 2.0, 1.0), InvalidInterval);
}

TEST_CASE("adaptive integration handles a sharp peak") {
    const double v = adaptive_integrate([](double x) { return std::exp(-100.0 * x * x); },
                                        -3.0, 5.0, 1e-14, 1e-14);
    CHECK(std::abs(v - std::sqrt(M_PI) / 10.0) < 1e-13);
}
