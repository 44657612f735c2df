// SPDX-License-Identifier: Apache-2.0
#include "rmt/transitions.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"
#include "rmt/errors.hpp"
#include "rmt/limit_laws.hpp"

namespace rmt {

namespace {

constexpr int kMaxRank = 5;

double ratio_power(const OneCutFrame& f, double x, int j) {
    const double g = f.gamma(x);
    return std::pow((g - 1.0 / g) / (g + 1.0 / g), j);
}

void check_frame_point(const OneCutFrame& f, double x) {
    if (!(x > f.e)) throw DomainError("transitions: x must exceed the right endpoint");
}

// Richardson-extrapolated central differences (orders 0..4) with the step
// scaled to the distance from the edge singularity at e.
double deriv_m(const std::function<double(double)>& f, double x, int order, double edge_dist) {
    if (order == 0) return f(x);
    if (order > 4) throw DomainError("transitions: derivative order above 4");
    const double h0 = std::min(0.02 * edge_dist, 0.1);
    auto stencil = [&](double h) -> double {
        switch (order) {
            case 1: return (f(x + h) - f(x - h)) / (2 * h);
            case 2: return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
            case 3: return (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) /
                           (2 * h * h * h);
            default:
                return (f(x + 2 * h) - 4 * f(x + h) + 6 * f(x) - 4 * f(x - h) + f(x - 2 * h)) /
                       (h * h * h * h);
        }
    };
    // three levels, h^2 error series
    const double a0 = stencil(h0), a1 = stencil(h0 / 2), a2 = stencil(h0 / 4);
    const double b0 = (4 * a1 - a0) / 3, b1 = (4 * a2 - a1) / 3;
    return (16 * b1 - b0) / 15;
}

void check_descending(const std::vector<double>& alphas) {
    for (std::size_t i = 0; i + 1 < alphas.size(); ++i)
        if (!(alphas[i] > alphas[i + 1]))
            throw DomainError("transitions: alphas must be strictly descending");
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// the constant-1 convention covers G^{(l)}_0
double gue_jth(double T, int l, int k) {
    if (k == 0) return 1.0;
    return gk_jth(T, l, k);
}

}  // namespace

double OneCutFrame::gamma(double x) const {
    if (!(x > e)) throw DomainError("OneCutFrame::gamma: x <= right endpoint");
    return std::pow((x - e_tilde) / (x - e), 0.25);
}

double m_func(const OneCutFrame& frame, int j, double x) {
    check_frame_point(frame, x);
    const double g = frame.gamma(x);
    const double c0 = std::sqrt(2.0 / (M_PI * (frame.e - frame.e_tilde)));
    return c0 * (g + 1.0 / g) / 2.0 * ratio_power(frame, x, j);
}

double m_tilde_func(const OneCutFrame& frame, int j, double x) {
    check_frame_point(frame, x);
    const double g = frame.gamma(x);
    const double c0 = std::sqrt(2.0 / (M_PI * (frame.e - frame.e_tilde)));
    return c0 * (g - 1.0 / g) / 2.0 * ratio_power(frame, x, -j);
}

Eigen::MatrixXd frakP(const OneCutFrame& frame, double a, double b, int mm, int j) {
    check_frame_point(frame, a);
    check_frame_point(frame, b);
    if (mm < 1 || mm > kMaxRank || j < 0 || j > mm) throw DomainError("frakP: bad (mm, j)");
    Eigen::MatrixXd P(mm, mm);
    for (int row = 0; row < mm; ++row) {
        auto Ma = [&](double x) { return m_func(frame, row + 1, x); };
        for (int i = 0; i < mm - j; ++i) P(row, i) = deriv_m(Ma, a, i, a - frame.e);
        for (int i = 0; i < j; ++i) P(row, mm - j + i) = deriv_m(Ma, b, i, b - frame.e);
    }
    return P;
}

Eigen::MatrixXd frakP_tilde(const OneCutFrame& frame, double a, double b, int mm, int j) {
    check_frame_point(frame, a);
    check_frame_point(frame, b);
    if (mm < 1 || mm > kMaxRank || j < 0 || j > mm) throw DomainError("frakP_tilde: bad (mm, j)");
    Eigen::MatrixXd P(mm, mm);
    for (int row = 0; row < mm; ++row) {
        auto Mt = [&](double x) { return m_tilde_func(frame, row + 1, x); };
        auto Ma = [&](double x) { return m_func(frame, row + 1, x); };
        for (int i = 0; i < mm - j; ++i) P(row, i) = deriv_m(Mt, a, i, a - frame.e);
        for (int i = 0; i < j; ++i) P(row, mm - j + i) = deriv_m(Ma, b, i, b - frame.e);
    }
    return P;
}

Eigen::MatrixXd frakQ(double c, int mm, int j, const std::vector<double>& alphas) {
    if (c == 0.0) throw DomainError("frakQ: c must be nonzero");
    if (static_cast<int>(alphas.size()) != mm || j < 0 || j > mm)
        throw DomainError("frakQ: bad (mm, j, alphas)");
    for (std::size_t i = 0; i < alphas.size(); ++i)
        for (std::size_t l = i + 1; l < alphas.size(); ++l)
            if (alphas[i] == alphas[l]) throw ConfluentAlphas("frakQ: repeated alpha");
    Eigen::MatrixXd Q(mm, mm);
    for (int k = 0; k < mm; ++k) {
        const double al = alphas[k];
        double pw = 1.0;
        for (int i = 0; i < mm - j; ++i) {
            Q(k, i) = pw;
            pw *= al;
        }
        const double ec = std::exp(c * al);
        pw = 1.0;
        for (int i = 0; i < j; ++i) {
            Q(k, mm - j + i) = pw * ec;
            pw *= al;
        }
    }
    return Q;
}

double JumpScaling::spike(double n, double alpha_k) const {
    return base_a - q_m * std::log(K_m * n) / n + alpha_k / n;
}

JumpScaling jump_scaling(double x1, double x2, double g2_1, double g2_2, int mm, int m) {
    if (!(x1 < x2)) throw DomainError("jump_scaling: need x1 < x2");
    if (!(g2_1 < 0.0) || !(g2_2 < 0.0)) throw DomainError("jump_scaling: need G'' < 0");
    if (m < 1 || m > mm) throw DomainError("jump_scaling: m out of 1..mm");
    const int expo = mm - 2 * m + 1;
    JumpScaling js;
    js.m = m;
    js.q_m = expo / (x2 - x1);
    if (expo == 0) throw ZeroExponent("jump_scaling: mm = 2m - 1 leaves K_m undefined");
    js.K_m = std::pow(factorial(mm - m) / factorial(m - 1) * std::pow(-g2_1, mm - m + 0.5) /
                          std::pow(-g2_2, m - 0.5),
                      1.0 / expo);
    return js;
}

JumpScaling jump_scaling_tilde(double c, double x0, double h2, double g2, int mm, int m) {
    if (!(c < x0)) throw DomainError("jump_scaling_tilde: need c < x0");
    if (!(h2 > 0.0) || !(g2 < 0.0)) throw DomainError("jump_scaling_tilde: need H''>0, G''<0");
    if (m < 1 || m > mm) throw DomainError("jump_scaling_tilde: m out of 1..mm");
    const int expo = mm - 2 * m + 1;
    JumpScaling js;
    js.m = m;
    js.q_m = expo / (x0 - c);
    if (expo == 0) throw ZeroExponent("jump_scaling_tilde: mm = 2m - 1 leaves K_m undefined");
    js.K_m = std::pow(factorial(mm - m) / factorial(m - 1) * std::pow(h2, mm - m + 0.5) /
                          std::pow(-g2, m - 0.5),
                      1.0 / expo);
    return js;
}

std::string TransitionResult::to_json() const {
    // nlohmann serializes doubles with round-trip precision (17 digits)
    nlohmann::json j;
    j["p"] = p;
    j["det_P_prev"] = det_P_prev;
    j["det_P_m"] = det_P_m;
    j["det_Q_prev"] = det_Q_prev;
    j["det_Q_m"] = det_Q_m;
    j["odds"] = odds;
    return j.dump(2);
}

TransitionResult p_m(const OneCutFrame& frame, double x1, double x2, double g2_1, double g2_2,
                     int mm, int m, const std::vector<double>& alphas) {
    if (!(x1 < x2)) throw DomainError("p_m: need x1 < x2");
    if (!(g2_1 < 0.0) || !(g2_2 < 0.0)) throw DomainError("p_m: need G'' < 0 at both points");
    if (m < 1 || m > mm) throw DomainError("p_m: m out of 1..mm");
    check_descending(alphas);
    const double c = x2 - x1;
    TransitionResult res;
    res.det_P_prev = frakP(frame, x1, x2, mm, m - 1).determinant();
    res.det_P_m = frakP(frame, x1, x2, mm, m).determinant();
    res.det_Q_prev = frakQ(c, mm, m - 1, alphas).determinant();
    res.det_Q_m = frakQ(c, mm, m, alphas).determinant();
    const double d_prev = res.det_P_prev * res.det_Q_prev;
    const double d_m = res.det_P_m * res.det_Q_m;
    res.odds = d_m / d_prev;
    res.p = d_prev / (d_prev + d_m);
    if (!(res.p > 0.0 && res.p < 1.0)) throw Error("p_m: mixture weight escaped (0,1)");
    return res;
}

TransitionResult p_tilde_m(const OneCutFrame& frame, double c_ac, double x0_ac, double h2,
                           double g2, int mm, int m, const std::vector<double>& alphas) {
    if (!(frame.e < c_ac && c_ac < x0_ac)) throw DomainError("p_tilde_m: need e < c < x0");
    if (!(h2 > 0.0) || !(g2 < 0.0)) throw DomainError("p_tilde_m: need H'' > 0 and G'' < 0");
    if (m < 1 || m > mm) throw DomainError("p_tilde_m: m out of 1..mm");
    check_descending(alphas);
    const double c = x0_ac - c_ac;
    // column-reversal sign of the tilde block; restores the (-i)^{mm-l}
    // normalization under which every det[P~_l] det[Q~_l] is positive
    auto det_tilde = [&](int l) {
        const int t = mm - l;
        const double flip = (t * (t - 1) / 2) % 2 ? -1.0 : 1.0;
        return flip * frakP_tilde(frame, c_ac, x0_ac, mm, l).determinant();
    };
    TransitionResult res;
    res.det_P_prev = det_tilde(m - 1);
    res.det_P_m = det_tilde(m);
    res.det_Q_prev = frakQ(c, mm, m - 1, alphas).determinant();
    res.det_Q_m = frakQ(c, mm, m, alphas).determinant();
    const double d_prev = res.det_P_prev * res.det_Q_prev;
    const double d_m = res.det_P_m * res.det_Q_m;
    if (!(d_prev > 0.0) || !(d_m > 0.0))
        throw Error("p_tilde_m: det[P~] det[Q~] product not positive");
    res.odds = d_m / d_prev;
    res.p = d_prev / (d_prev + d_m);
    if (!(res.p > 0.0 && res.p < 1.0)) throw Error("p_tilde_m: mixture weight escaped (0,1)");
    return res;
}

std::function<double(double)> mixture_prediction(const TransitionResult& result, int k, int mm,
                                                 int m, MixturePoint which_point) {
    if (m < 1 || m > mm) throw CaseOutOfRange("mixture_prediction: m out of 1..mm");
    const double p = result.p;
    switch (which_point) {
        case MixturePoint::X2:
            if (k >= 1 && k < m)
                return [p, k, m](double T) {
                    return p * gue_jth(T, k, m - 1) + (1.0 - p) * gue_jth(T, k, m);
                };
            if (k == m)
                return [p, m](double T) { return p + (1.0 - p) * gue_jth(T, m, m); };
            throw CaseOutOfRange("mixture_prediction: k out of range at x2");
        case MixturePoint::X1:
            if (k == m)
                return [p, mm, m](double T) { return p * gue_jth(T, 1, mm - m + 1); };
            if (k > m && k <= mm)
                return [p, k, mm, m](double T) {
                    return p * gue_jth(T, k - m + 1, mm - m + 1) +
                           (1.0 - p) * gue_jth(T, k - m, mm - m);
                };
            throw CaseOutOfRange("mixture_prediction: k out of range at x1");
        case MixturePoint::Edge:
            if (k == m) return [p](double T) { return p * tw_jth(T, 1); };
            if (k > m)
                return [p, k, m](double T) {
                    return p * tw_jth(T, k - m + 1) + (1.0 - p) * tw_jth(T, k - m);
                };
            throw CaseOutOfRange("mixture_prediction: k out of range at the edge");
    }
    throw CaseOutOfRange("mixture_prediction: unknown point");
}

}  // namespace rmt
