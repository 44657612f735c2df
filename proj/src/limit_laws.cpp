// SPDX-License-Identifier: Apache-2.0
#include "rmt/limit_laws.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "rmt/airy.hpp"
#include "rmt/contour.hpp"
#include "rmt/errors.hpp"
#include "rmt/moments.hpp"

namespace rmt {

namespace {

constexpr int kDefaultNodes = 80;
constexpr int kCauchyNodes = 64;
constexpr double kCauchyRadius = 0.5;
constexpr int kChebPoints = 120;
constexpr double kChebHalfWindow = 3.0;
constexpr double kMinAlphaGap = 1e-4;

void check_s_domain(cplx s) {
    const bool real_unit = s.imag() == 0.0 && s.real() >= 0.0 && s.real() <= 1.0;
    if (!real_unit && std::abs(s - 1.0) > 1.0 + 1e-12)
        throw DomainError("limit laws: s outside |s-1| <= 1 and [0,1]");
}

void check_T_domain(double T) {
    if (T < -12.0) throw DomainError("limit laws: T < -12");
}

void check_distinct(const std::vector<double>& alphas) {
    for (std::size_t i = 0; i < alphas.size(); ++i)
        for (std::size_t j = i + 1; j < alphas.size(); ++j)
            if (std::abs(alphas[i] - alphas[j]) <= kMinAlphaGap)
                throw ConfluentAlphas("alphas closer than 1e-4");
}

// d^i/ds^i at s=1 for i = 0..jmax-1 by the trapezoid Cauchy integral on
// |s-1| = 1/2; f entire in s.
template <typename F>
std::vector<cplx> s_derivatives_at_one(F&& f, int jmax) {
    std::vector<cplx> vals(kCauchyNodes);
    for (int k = 0; k < kCauchyNodes; ++k) {
        const double th = 2.0 * M_PI * k / kCauchyNodes;
        vals[k] = f(cplx(1.0 + kCauchyRadius * std::cos(th), kCauchyRadius * std::sin(th)));
    }
    std::vector<cplx> der(jmax);
    double fact = 1.0;
    for (int i = 0; i < jmax; ++i) {
        if (i > 0) fact *= i;
        cplx acc = 0.0;
        for (int k = 0; k < kCauchyNodes; ++k) {
            const double th = 2.0 * M_PI * k / kCauchyNodes;
            acc += vals[k] * std::polar(1.0, -i * th);
        }
        der[i] = acc * fact / (double(kCauchyNodes) * std::pow(kCauchyRadius, i));
    }
    return der;
}

template <typename F>
double jth_law_from(F&& f, int j) {
    if (j == 1) return f(cplx(1.0)).real();
    const auto der = s_derivatives_at_one(f, j);
    cplx acc = 0.0;
    double fact = 1.0;
    for (int i = 0; i < j; ++i) {
        if (i > 0) fact *= i;
        acc += (i % 2 ? -1.0 : 1.0) / fact * der[i];
    }
    return acc.real();
}

std::vector<double> sample_c_alpha(const AiryDiscretization& disc, double alpha) {
    std::vector<double> v(disc.node_count());
    for (int i = 0; i < disc.node_count(); ++i)
        v[i] = detail::c_alpha_clipped(disc.nodes()[i], alpha);
    return v;
}

std::vector<double> sample_ai(const AiryDiscretization& disc) {
    std::vector<double> v(disc.node_count());
    for (int i = 0; i < disc.node_count(); ++i)
        v[i] = detail::airy_ai_clipped(disc.nodes()[i]);
    return v;
}

cplx f1_on(const AiryDiscretization& disc, const std::vector<double>& calpha,
           const std::vector<double>& ai, cplx s) {
    return disc.fredholm(s) * (1.0 - s * disc.resolvent_inner(s, calpha, ai));
}

// ---- Chebyshev interpolation of r(T) = f1/F0 on a window ----------------

struct ChebRatio {
    double mid, half;
    int n;  // n+1 points
    std::vector<AiryDiscretization> discs;
    std::vector<std::vector<double>> ai;  // per point

    ChebRatio(double T, const std::vector<double>& alphas, int points) {
        double lo = std::max(T - kChebHalfWindow, -12.0);
        double hi = T + kChebHalfWindow;
        if (hi - lo < 1.0) throw WindowTooSmall("fk: usable T window narrower than 1");
        mid = 0.5 * (lo + hi);
        half = 0.5 * (hi - lo);
        n = points - 1;
        discs.reserve(points);
        ai.reserve(points);
        for (int jj = 0; jj <= n; ++jj) {
            const double t = mid + half * std::cos(M_PI * jj / n);
            discs.emplace_back(t, kDefaultNodes);
            ai.push_back(sample_ai(discs.back()));
        }
        samples_.resize(alphas.size());
        for (std::size_t a = 0; a < alphas.size(); ++a) {
            samples_[a].resize(points);
            for (int jj = 0; jj <= n; ++jj) samples_[a][jj] = sample_c_alpha(discs[jj], alphas[a]);
        }
    }

    // values r(t_j; alpha_a; s) at the Chebyshev points
    std::vector<cplx> ratio_values(std::size_t a, cplx s) const {
        std::vector<cplx> r(n + 1);
        for (int jj = 0; jj <= n; ++jj) {
            const cplx F0 = discs[jj].fredholm(s);
            if (std::abs(F0) < 1e-300) throw SingularOperator("fk: vanishing F0 on the window");
            r[jj] = 1.0 - s * discs[jj].resolvent_inner(s, samples_[a][jj], ai[jj]);
        }
        return r;
    }

    std::vector<std::vector<std::vector<double>>> samples_;  // alpha -> point -> node
};

// Chebyshev coefficients from values at x_j = cos(pi j / n) (DCT-I).
std::vector<cplx> cheb_coeffs(const std::vector<cplx>& vals) {
    const int n = static_cast<int>(vals.size()) - 1;
    std::vector<cplx> c(n + 1, 0.0);
    for (int k = 0; k <= n; ++k) {
        cplx acc = 0.0;
        for (int jj = 0; jj <= n; ++jj) {
            const double w = (jj == 0 || jj == n) ? 0.5 : 1.0;
            acc += w * vals[jj] * std::cos(M_PI * jj * k / n);
        }
        c[k] = 2.0 * acc / double(n);
    }
    c[0] *= 0.5;
    c[n] *= 0.5;
    return c;
}

// derivative coefficients on [-1,1]
std::vector<cplx> cheb_derivative(const std::vector<cplx>& c) {
    const int n = static_cast<int>(c.size()) - 1;
    std::vector<cplx> d(n + 1, 0.0);
    for (int k = n - 1; k >= 0; --k)
        d[k] = (k + 2 <= n ? d[k + 2] : cplx(0.0)) + 2.0 * (k + 1.0) * c[k + 1];
    d[0] *= 0.5;
    return d;
}

cplx cheb_eval(const std::vector<cplx>& c, double x) {
    cplx b1 = 0.0, b2 = 0.0;
    for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k) {
        const cplx b0 = 2.0 * x * b1 - b2 + c[k];
        b2 = b1;
        b1 = b0;
    }
    return x * b1 - b2 + c[0];
}

cplx fk_impl(double T, const std::vector<double>& alphas, cplx s, int cheb_points) {
    const int k = static_cast<int>(alphas.size());
    ChebRatio grid(T, alphas, cheb_points);
    const double u = (T - grid.mid) / grid.half;

    // derivatives d^l/dT^l r(T; alpha_a) for l = 0..k-1
    Eigen::MatrixXcd ders(k, k);
    for (int a = 0; a < k; ++a) {
        std::vector<cplx> c = cheb_coeffs(grid.ratio_values(a, s));
        for (int l = 0; l < k; ++l) {
            ders(a, l) = cheb_eval(c, u);
            c = cheb_derivative(c);
            for (auto& cc : c) cc /= grid.half;
        }
    }

    Eigen::MatrixXcd B(k, k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            // (alpha_i + d/dT)^j = sum_l binom(j,l) alpha_i^{j-l} d^l
            cplx acc = 0.0;
            double binom = 1.0;
            for (int l = 0; l <= j; ++l) {
                if (l > 0) binom = binom * (j - l + 1) / l;
                acc += binom * std::pow(alphas[i], j - l) * ders(i, l);
            }
            B(i, j) = acc;
        }
    }
    cplx vandermonde = 1.0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) vandermonde *= alphas[j] - alphas[i];
    const cplx F0 = fredholm_tw(T, s);
    return F0 * B.partialPivLu().determinant() / vandermonde;
}

}  // namespace

cplx fredholm_tw(double T, cplx s) {
    check_T_domain(T);
    check_s_domain(s);
    const AiryDiscretization coarse(T, kDefaultNodes), fine(T, 2 * kDefaultNodes);
    const cplx a = coarse.fredholm(s), b = fine.fredholm(s);
    if (std::abs(a - b) > 1e-7 * (1.0 + std::abs(b)))
        throw Divergence("fredholm_tw: node-doubling disagreement above 1e-7");
    return b;
}

double tw_jth(double T, int j) {
    if (j < 1 || j > 6) throw DomainError("tw_jth: need 1 <= j <= 6");
    check_T_domain(T);
    const AiryDiscretization disc(T, 2 * kDefaultNodes);
    return jth_law_from([&](cplx s) { return disc.fredholm(s); }, j);
}

cplx f1(double T, double alpha, cplx s) {
    check_T_domain(T);
    check_s_domain(s);
    const AiryDiscretization disc(T, kDefaultNodes);
    return f1_on(disc, sample_c_alpha(disc, alpha), sample_ai(disc), s);
}

cplx fk(double T, const std::vector<double>& alphas, cplx s) {
    if (alphas.empty() || alphas.size() > 5) throw DomainError("fk: need 1 <= k <= 5");
    check_T_domain(T);
    check_s_domain(s);
    check_distinct(alphas);
    return fk_impl(T, alphas, s, kChebPoints);
}

double fk_jth(double T, int j, const std::vector<double>& alphas) {
    if (j < 1 || j > 6) throw DomainError("fk_jth: need 1 <= j <= 6");
    check_T_domain(T);
    check_distinct(alphas);
    ChebRatio grid(T, alphas, kChebPoints);
    const AiryDiscretization center(T, kDefaultNodes);
    // reuse the window across the s circle: rebuild only the cheap parts
    auto f = [&](cplx s) -> cplx {
        const int k = static_cast<int>(alphas.size());
        const double u = (T - grid.mid) / grid.half;
        Eigen::MatrixXcd ders(k, k);
        for (int a = 0; a < k; ++a) {
            std::vector<cplx> c = cheb_coeffs(grid.ratio_values(a, s));
            for (int l = 0; l < k; ++l) {
                ders(a, l) = cheb_eval(c, u);
                c = cheb_derivative(c);
                for (auto& cc : c) cc /= grid.half;
            }
        }
        Eigen::MatrixXcd B(k, k);
        for (int i = 0; i < k; ++i)
            for (int jj = 0; jj < k; ++jj) {
                cplx acc = 0.0;
                double binom = 1.0;
                for (int l = 0; l <= jj; ++l) {
                    if (l > 0) binom = binom * (jj - l + 1) / l;
                    acc += binom * std::pow(alphas[i], jj - l) * ders(i, l);
                }
                B(i, jj) = acc;
            }
        cplx vdm = 1.0;
        for (int i = 0; i < k; ++i)
            for (int jj = i + 1; jj < k; ++jj) vdm *= alphas[jj] - alphas[i];
        return center.fredholm(s) * B.partialPivLu().determinant() / vdm;
    };
    return jth_law_from(f, j);
}

cplx gk(double T, const std::vector<double>& alphas, cplx s) {
    const int k = static_cast<int>(alphas.size());
    if (k < 1 || k > 8) throw DomainError("gk: need 1 <= k <= 8");
    check_distinct(alphas);
    if (s == 0.0) return 1.0;
    if (std::isinf(T) && T > 0) return 1.0;
    Eigen::MatrixXcd N(k, k);
    Eigen::MatrixXd D(k, k);
    for (int j = 0; j < k; ++j) {
        const auto full = detail::full_moments_normalized(alphas[j], k);
        const auto tail = detail::tail_moments_normalized(alphas[j], T, k);
        for (int i = 0; i < k; ++i) {
            D(i, j) = full[i];
            N(i, j) = full[i] - s * tail[i];
        }
    }
    const double dd = D.partialPivLu().determinant();
    double scale = 0.0;
    for (int i = 0; i < k; ++i) scale = std::max(scale, D.row(i).cwiseAbs().maxCoeff());
    if (std::abs(dd) < 1e-14 * std::pow(std::max(scale, 1.0), k))
        throw SingularDenominator("gk: denominator determinant vanished (internal error)");
    return N.partialPivLu().determinant() / dd;
}

double gk_jth(double T, int j, const std::vector<double>& alphas) {
    const int k = static_cast<int>(alphas.size());
    if (k < 1 || k > 8 || j < 1 || j > k) throw DomainError("gk_jth: need 1 <= j <= k <= 8");
    return jth_law_from([&](cplx s) { return gk(T, alphas, s); }, j);
}

double gk_jth(double T, int j, int k) {
    if (k < 1 || k > 6 || j < 1 || j > k) throw DomainError("gk_jth: need 1 <= j <= k <= 6");
    auto value_at = [&](double eps) {
        std::vector<double> alphas(k);
        for (int i = 0; i < k; ++i) alphas[i] = eps * (i + 1);
        return jth_law_from([&](cplx s) { return gk(T, alphas, s); }, j);
    };
    // leading error is O(eps); two-level Richardson removes eps and eps^2
    const double eps = 1e-3;
    const double v1 = value_at(eps), v2 = value_at(eps / 2), v4 = value_at(eps / 4);
    return (8.0 * v4 - 6.0 * v2 + v1) / 3.0;
}

double normal_cdf(double T) { return 0.5 * std::erfc(-T / std::sqrt(2.0)); }

void LawCurve::write_csv(std::ostream& os) const {
    os << "T,value\n" << std::setprecision(17);
    for (std::size_t i = 0; i < grid.size(); ++i) os << grid[i] << "," << values[i] << "\n";
}

double LawCurve::interpolate(double T) const {
    if (grid.empty()) throw DomainError("LawCurve::interpolate: empty grid");
    if (T <= grid.front()) return values.front();
    if (T >= grid.back()) return values.back();
    const auto it = std::upper_bound(grid.begin(), grid.end(), T);
    const std::size_t i = it - grid.begin();
    const double t = (T - grid[i - 1]) / (grid[i] - grid[i - 1]);
    return (1.0 - t) * values[i - 1] + t * values[i];
}

}  // namespace rmt
