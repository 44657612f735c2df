// SPDX-License-Identifier: Apache-2.0
#include "rmt/airy.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "rmt/detail/ray_panels.hpp"
#include "rmt/errors.hpp"
#include "rmt/quadrature.hpp"

namespace rmt {

namespace {

const double kAi0 = std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0);
const double kAip0 = -std::pow(3.0, -1.0 / 3.0) / std::tgamma(1.0 / 3.0);

// Maclaurin series.  Ai = c1 f - c2 g with
//   f = sum a_k x^{3k},    a_0 = 1, a_k = a_{k-1} / ((3k-1) 3k)
//   g = sum b_k x^{3k+1},  b_0 = 1, b_k = b_{k-1} / (3k (3k+1))
void airy_series(double x, double& ai, double& aip) {
    double a = 1.0, b = 1.0;
    double f = 1.0, g = x, fp = 0.0, gp = 1.0;
    const double x3 = x * x * x;
    for (int k = 1; k <= 60; ++k) {
        a /= (3.0 * k - 1.0) * (3.0 * k);
        b /= (3.0 * k) * (3.0 * k + 1.0);
        const double xf = a * std::pow(x, 3 * k);
        const double xg = b * std::pow(x, 3 * k + 1);
        f += xf;
        g += xg;
        fp += 3.0 * k * a * std::pow(x, 3 * k - 1);
        gp += (3.0 * k + 1.0) * b * std::pow(x, 3 * k);
        if (std::abs(xf) < 1e-20 && std::abs(xg) < 1e-20) break;
        (void)x3;
    }
    ai = kAi0 * f + kAip0 * g;
    aip = kAi0 * fp + kAip0 * gp;
}

// Oscillatory-integral route: Ai(xi) = (1/2pi) int e^{i z^3/3 + i xi z} dz
// over the rays from inf e^{5 pi i/6} to inf e^{pi i/6}; the integrand is
// entire, and the conjugate-ray symmetry reduces it to 2 Re of one ray.
void airy_contour(double xi, double& ai, double& aip) {
    using detail::cubic_phase;
    static const QuadratureRule rule = [] {
        std::vector<double> breaks(detail::kRayBreaks.begin(), detail::kRayBreaks.end());
        return composite_gauss_legendre(detail::kRayNodesPerPanel, breaks);
    }();
    const std::complex<double> dir = std::polar(1.0, M_PI / 6.0);
    const std::complex<double> i(0.0, 1.0);
    double s0 = 0.0, s1 = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const std::complex<double> z = rule.nodes[k] * dir;
        const std::complex<double> e = std::exp(cubic_phase(z, xi)) * dir;
        s0 += rule.weights[k] * 2.0 * e.real();
        s1 += rule.weights[k] * 2.0 * (i * z * e).real();
    }
    ai = s0 / (2.0 * M_PI);
    aip = s1 / (2.0 * M_PI);
}

// Asymptotic coefficients u_k (and v_k for the derivative).
//   u_0 = 1, u_k = u_{k-1} (6k-1)(6k-3)(6k-5) / (216 k (2k-1)),
//   v_k = -u_k (6k+1)/(6k-1).
void asym_coeffs(std::vector<double>& u, std::vector<double>& v, int kmax) {
    u.assign(kmax + 1, 1.0);
    v.assign(kmax + 1, 1.0);
    for (int k = 1; k <= kmax; ++k) {
        u[k] = u[k - 1] * (6.0 * k - 1.0) * (6.0 * k - 3.0) * (6.0 * k - 5.0) /
               (216.0 * k * (2.0 * k - 1.0));
        v[k] = -u[k] * (6.0 * k + 1.0) / (6.0 * k - 1.0);
    }
    v[0] = 1.0;
}

void airy_asym_pos(double x, double& ai, double& aip) {
    const double zeta = 2.0 / 3.0 * std::pow(x, 1.5);
    static std::vector<double> u, v;
    if (u.empty()) asym_coeffs(u, v, 40);
    double su = 0.0, sv = 0.0, zk = 1.0;
    double prev = 1e300;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double tu = u[k] / zk;
        if (std::abs(tu) > prev) break;  // past optimal truncation
        su += (k % 2 ? -tu : tu);
        sv += (k % 2 ? -v[k] / zk : v[k] / zk);
        prev = std::abs(tu);
        zk *= zeta;
    }
    const double pre = std::exp(-zeta) / (2.0 * std::sqrt(M_PI) * std::pow(x, 0.25));
    ai = pre * su;
    aip = -std::pow(x, 0.25) * std::exp(-zeta) / (2.0 * std::sqrt(M_PI)) * sv;
}

void airy_asym_neg(double x, double& ai, double& aip) {
    const double t = -x;
    const double zeta = 2.0 / 3.0 * std::pow(t, 1.5);
    static std::vector<double> u, v;
    if (u.empty()) asym_coeffs(u, v, 60);
    // P,Q sums over even/odd k with alternating signs
    double P = 0.0, Q = 0.0, Pv = 0.0, Qv = 0.0, zk = 1.0;
    double prev = 1e300;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double term = u[k] / zk;
        if (std::abs(term) > prev) break;
        prev = std::abs(term);
        const int half = static_cast<int>(k / 2);
        const double sgn = (half % 2 ? -1.0 : 1.0);
        if (k % 2 == 0) {
            P += sgn * term;
            Pv += sgn * v[k] / zk;
        } else {
            Q += sgn * term;
            Qv += sgn * v[k] / zk;
        }
        zk *= zeta;
    }
    const double c = std::cos(zeta - M_PI / 4.0), s = std::sin(zeta - M_PI / 4.0);
    ai = (c * P + s * Q) / (std::sqrt(M_PI) * std::pow(t, 0.25));
    aip = std::pow(t, 0.25) / std::sqrt(M_PI) * (s * Pv - c * Qv);
}

void airy_pair(double x, double& ai, double& aip) {
    if (std::abs(x) <= 4.0)
        airy_series(x, ai, aip);
    else if (x > 8.0)
        airy_asym_pos(x, ai, aip);
    else if (x < -8.0)
        airy_asym_neg(x, ai, aip);
    else
        airy_contour(x, ai, aip);
}

}  // namespace

double airy_ai(double x) {
    if (std::abs(x) > 50.0) throw DomainError("airy_ai: |x| > 50");
    double ai, aip;
    airy_pair(x, ai, aip);
    return ai;
}

double airy_ai_prime(double x) {
    if (std::abs(x) > 50.0) throw DomainError("airy_ai_prime: |x| > 50");
    double ai, aip;
    airy_pair(x, ai, aip);
    return aip;
}

namespace detail {

double airy_ai_clipped(double x) {
    if (x > 50.0) return 0.0;
    return airy_ai(x);
}

double airy_ai_prime_clipped(double x) {
    if (x > 50.0) return 0.0;
    return airy_ai_prime(x);
}

}  // namespace detail

}  // namespace rmt
