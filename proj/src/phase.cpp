// SPDX-License-Identifier: Apache-2.0
#include "rmt/phase.hpp"

#include <algorithm>
#include <cmath>

#include "rmt/errors.hpp"

namespace rmt {

namespace {

constexpr int kScanPoints = 4001;
constexpr double kTieTol = 1e-9;
constexpr double kFlatTol = 1e-6;

// right bound beyond which G(.;a) is decreasing: V'(x) > a + g'(e) there
double scan_bound(const EquilibriumData& eq, double a) {
    double x = eq.right_endpoint() + 1.0;
    const double gpe = eq.g_prime(eq.right_endpoint());
    for (int i = 0; i < 400 && eq.potential().Vp(x) < a + gpe + 1.0; ++i) x *= 1.5;
    if (eq.potential().Vp(x) < a + gpe + 1.0)
        throw SearchBoundsExceeded("phase: no decreasing region of G found");
    return x;
}

double golden_max(const EquilibriumData& eq, double a, double lo, double hi) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = big_G(eq, x1, a), f2 = big_G(eq, x2, a);
    for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + std::abs(hi)); ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = big_G(eq, x2, a);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = big_G(eq, x1, a);
        }
    }
    return 0.5 * (lo + hi);
}

// interior local maxima of G(.;a) on (c(a), bound), refined
std::vector<std::pair<double, double>> local_maxima(const EquilibriumData& eq, double a) {
    const double c = c_of_a(eq, a);
    const double hi = scan_bound(eq, a);
    const double lo = c + 1e-9 * (1.0 + std::abs(c));
    std::vector<double> xs(kScanPoints), gs(kScanPoints);
    for (int i = 0; i < kScanPoints; ++i) {
        xs[i] = lo + (hi - lo) * i / (kScanPoints - 1.0);
        gs[i] = big_G(eq, xs[i], a);
    }
    std::vector<std::pair<double, double>> out;
    for (int i = 1; i + 1 < kScanPoints; ++i) {
        if (gs[i] >= gs[i - 1] && gs[i] >= gs[i + 1]) {
            const double x = golden_max(eq, a, xs[i - 1], xs[i + 1]);
            if (out.empty() || std::abs(x - out.back().first) > 1e-7 * (1.0 + std::abs(x)))
                out.emplace_back(x, big_G(eq, x, a));
        }
    }
    return out;
}

// sup_x G(x;a) - H(c(a);a) over interior maxima (-inf when none)
double excess(const EquilibriumData& eq, double a) {
    const double c = c_of_a(eq, a);
    const double hc = big_H(eq, c, a);
    double best = -1e300;
    for (const auto& [x, gx] : local_maxima(eq, a)) best = std::max(best, gx - hc);
    return best;
}

}  // namespace

double big_G(const EquilibriumData& eq, double x, double a) {
    if (x < eq.right_endpoint()) throw DomainError("big_G: x below the right endpoint");
    return eq.g(x) - eq.potential().V(x) + a * x;
}

double big_H(const EquilibriumData& eq, double x, double a) {
    if (x < eq.right_endpoint()) throw DomainError("big_H: x below the right endpoint");
    return -eq.g(x) + a * x + eq.robin_constant();
}

double big_G_prime(const EquilibriumData& eq, double x, double a) {
    return eq.g_prime(x) - eq.potential().Vp(x) + a;
}

double big_G_second(const EquilibriumData& eq, double x, double a) {
    (void)a;  // G'' does not depend on a
    return eq.g_second(x) - eq.potential().Vpp(x);
}

double big_H_second(const EquilibriumData& eq, double x) { return -eq.g_second(x); }

double c_of_a(const EquilibriumData& eq, double a) {
    const double e = eq.right_endpoint();
    if (a >= eq.g_prime(e)) return e;  // H'(e+) >= 0, g'(e) = V'(e)/2
    double lo = e, hi = e + 1.0;
    while (a < eq.g_prime(hi)) hi = e + 2.0 * (hi - e);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (a < eq.g_prime(mid))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

CriticalValue critical_ac(const EquilibriumData& eq, double a_min) {
    const double a_half = 0.5 * eq.potential().Vp(eq.right_endpoint());
    if (!(a_min < a_half)) throw SearchBoundsExceeded("critical_ac: empty search window");
    CriticalValue res;
    // Jump transitions show up as a crossing strictly below a_half.
    if (excess(eq, a_half * (1.0 - 1e-7)) <= 0.0) {
        res.a_c = a_half;
        res.is_continuous = true;
        return res;
    }
    double lo = a_min, hi = a_half;
    if (excess(eq, lo) > 0.0)
        throw SearchBoundsExceeded("critical_ac: predicate already true at the window start");
    for (int it = 0; it < 80 && hi - lo > 1e-13 * (1.0 + hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (excess(eq, mid) > 0.0 ? hi : lo) = mid;
    }
    res.a_c = 0.5 * (lo + hi);
    res.is_continuous = std::abs(res.a_c - a_half) < 1e-8;
    return res;
}

OutlierLocation x0_of_a(const EquilibriumData& eq, double a) {
    auto maxima = local_maxima(eq, a);
    if (maxima.empty()) throw SearchBoundsExceeded("x0_of_a: no interior maximum of G");
    std::sort(maxima.begin(), maxima.end(),
              [](const auto& p, const auto& q) { return p.second > q.second; });
    OutlierLocation loc;
    loc.x0 = maxima[0].first;
    loc.second_deriv = big_G_second(eq, loc.x0, a);
    if (std::abs(loc.second_deriv) < kFlatTol)
        throw FlatMaximum("x0_of_a: |G''| below 1e-6 at the maximizer");
    if (maxima.size() >= 2) {
        const double gap = maxima[0].second - maxima[1].second;
        if (std::abs(gap) < kTieTol * (1.0 + std::abs(maxima[0].second))) {
            loc.is_secondary_critical = true;
            loc.x1 = std::min(maxima[0].first, maxima[1].first);
            loc.x2 = std::max(maxima[0].first, maxima[1].first);
        }
    }
    return loc;
}

std::vector<SecondaryCritical> scan_secondary_criticals(const EquilibriumData& eq, double a_lo,
                                                        double a_hi, int grid_n) {
    std::vector<SecondaryCritical> out;
    if (eq.potential().convex_beyond_edge.value_or(false)) return out;

    // signed height difference between the two leading maxima, ordered by x
    auto gap_of = [&](double a, double* px1, double* px2) -> std::optional<double> {
        auto ms = local_maxima(eq, a);
        if (ms.size() < 2) return std::nullopt;
        std::sort(ms.begin(), ms.end(),
                  [](const auto& p, const auto& q) { return p.second > q.second; });
        auto lead = std::minmax(ms[0], ms[1],
                                [](const auto& p, const auto& q) { return p.first < q.first; });
        if (px1) *px1 = lead.first.first;
        if (px2) *px2 = lead.second.first;
        return lead.second.second - lead.first.second;  // G(x2) - G(x1)
    };

    double prev_a = 0.0;
    std::optional<double> prev_gap;
    for (int i = 0; i <= grid_n; ++i) {
        const double a = a_lo + (a_hi - a_lo) * i / grid_n;
        auto gap = gap_of(a, nullptr, nullptr);
        if (gap && prev_gap && *prev_gap * *gap < 0.0) {
            double lo = prev_a, hi = a;
            for (int it = 0; it < 100; ++it) {
                const double mid = 0.5 * (lo + hi);
                auto gm = gap_of(mid, nullptr, nullptr);
                if (!gm) break;
                (*gm * *prev_gap > 0.0 ? lo : hi) = mid;
            }
            SecondaryCritical sc;
            sc.a_star = 0.5 * (lo + hi);
            auto g = gap_of(sc.a_star, &sc.x1, &sc.x2);
            sc.gap = g ? std::abs(*g) : 0.0;
            out.push_back(sc);
        }
        prev_a = a;
        prev_gap = gap;
    }
    return out;
}

PhasePortrait phase_portrait(const EquilibriumData& eq, double a_max) {
    PhasePortrait pp;
    const CriticalValue cv = critical_ac(eq);
    pp.a_c = cv.a_c;
    pp.is_continuous_transition = cv.is_continuous;
    pp.c_map = [eq](double a) { return c_of_a(eq, a); };
    pp.x0_map = [eq](double a) { return x0_of_a(eq, a).x0; };
    pp.secondary_criticals =
        scan_secondary_criticals(eq, pp.a_c + 1e-3 * (1.0 + pp.a_c), a_max);
    return pp;
}

}  // namespace rmt
