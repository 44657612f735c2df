// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

namespace rmt {

// One-cut support endpoints; gamma(x) = ((x - lo)/(x - hi))^{1/4} > 1 for
// x > hi.
struct OneCutFrame {
    double e_tilde = 0.0;  // left endpoint
    double e = 0.0;        // right endpoint
    double gamma(double x) const;
};

// M_j(x) = sqrt(2/(pi (e - et))) (g + 1/g)/2 ((g - 1/g)/(g + 1/g))^j, g =
// gamma(x); positive for x > e.
double m_func(const OneCutFrame& frame, int j, double x);

// The companion family is purely imaginary on (e, inf); this returns the
// positive real number -i Mtilde_j(x), i.e. the same expression with
// (g - 1/g)/2 in front and the ratio power -j.
double m_tilde_func(const OneCutFrame& frame, int j, double x);

// mm x mm matrix with columns M_.(a) derivatives of orders 0..mm-j-1, then
// M_.(b) derivatives of orders 0..j-1; rows are the index 1..mm.
// x-derivatives by Richardson-extrapolated central differences on the
// closed form (step scaled to the distance from the edge).
Eigen::MatrixXd frakP(const OneCutFrame& frame, double a, double b, int mm, int j);

// Variant with the first mm-j columns built from m_tilde_func at a.  All
// entries are real in the -i normalization; det of this matrix times
// (-1)^{t(t-1)/2}, t = mm-j, equals the (-i)^{mm-j}-normalized determinant
// whose positivity products define the jump-critical mixture weights.
Eigen::MatrixXd frakP_tilde(const OneCutFrame& frame, double a, double b, int mm, int j);

// rows indexed by alpha_k: [1, a, ..., a^{mm-j-1}, e^{ca}, a e^{ca}, ...,
// a^{j-1} e^{ca}].  Requires distinct alphas; c != 0.
Eigen::MatrixXd frakQ(double c, int mm, int j, const std::vector<double>& alphas);

// Spike-sequence scaling of the m-th jump regime.
struct JumpScaling {
    int m = 1;
    double q_m = 0.0;
    double K_m = 0.0;
    double base_a = 0.0;  // the critical spike value the sequence approaches

    // a_k(n) = a - q_m log(K_m n)/n + alpha_k/n
    double spike(double n, double alpha_k) const;
};

// q_m = (mm - 2m + 1)/(x2 - x1) and K_m from the curvature constants
// g2_1 = G''(x1) < 0, g2_2 = G''(x2) < 0.  Throws ZeroExponent when
// mm = 2m - 1 (the K_m exponent vanishes).
JumpScaling jump_scaling(double x1, double x2, double g2_1, double g2_2, int mm, int m);

// Jump-critical variant: points c < x0, curvatures h2 = H''(c) > 0 and
// g2 = G''(x0) < 0.
JumpScaling jump_scaling_tilde(double c, double x0, double h2, double g2, int mm, int m);

struct TransitionResult {
    double p = 0.0;  // mixture weight in (0,1)
    double det_P_prev = 0.0, det_P_m = 0.0;
    double det_Q_prev = 0.0, det_Q_m = 0.0;
    double odds = 0.0;  // r = det_P_m det_Q_m / (det_P_prev det_Q_prev)
    std::string to_json() const;
};

// p_m = D_{m-1} / (D_{m-1} + D_m) with D_l = det P_l det Q_l,
// P_l = frakP(x1, x2, mm, l), Q_l = frakQ(x2-x1, mm, l, alphas).
// alphas must be strictly descending.
TransitionResult p_m(const OneCutFrame& frame, double x1, double x2, double g2_1, double g2_2,
                     int mm, int m, const std::vector<double>& alphas);

// Jump-critical analogue built from frakP_tilde at (c(a_c), x0(a_c)); the
// positivity of each product det[P~_l] det[Q~_l] is asserted.
TransitionResult p_tilde_m(const OneCutFrame& frame, double c_ac, double x0_ac, double h2,
                           double g2, int mm, int m, const std::vector<double>& alphas);

enum class MixturePoint { X1, X2, Edge };

// The predicted limiting law of the k-th largest eigenvalue under the m-th
// jump scaling, as a callable CDF-like curve:
//   at X2:   k <  m: p G^{(k)}_{m-1} + (1-p) G^{(k)}_m
//            k == m: p + (1-p) G^{(m)}_m
//   at X1:   k == m: p G^{(1)}_{mm-m+1}
//            k >  m: p G^{(k-m+1)}_{mm-m+1} + (1-p) G^{(k-m)}_{mm-m}
//   at Edge (jump-critical): k == m: p F_TW; k > m: p TW^{(k-m+1)} +
//            (1-p) TW^{(k-m)}
// G^{(l)}_0 is the constant 1.
std::function<double(double)> mixture_prediction(const TransitionResult& result, int k, int mm,
                                                 int m, MixturePoint which_point);

}  // namespace rmt
