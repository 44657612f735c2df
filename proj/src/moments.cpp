// SPDX-License-Identifier: Apache-2.0
#include "rmt/moments.hpp"

#include <cmath>
#include <limits>

#include "rmt/errors.hpp"

namespace rmt {

namespace detail {

std::vector<double> full_moments_normalized(double alpha, int k) {
    // E[(alpha+Z)^m] satisfies m_{i+1} = alpha m_i + (i-1) m_{i-1} in the
    // 1-based indexing m_i = E[(alpha+Z)^{i-1}].
    std::vector<double> m(k + 1, 0.0);
    if (k >= 1) m[1] = 1.0;
    for (int i = 1; i < k; ++i) m[i + 1] = alpha * m[i] + (i - 1) * (i >= 2 ? m[i - 1] : 0.0);
    // drop the unused slot 0
    return {m.begin() + 1, m.end()};
}

std::vector<double> tail_moments_normalized(double alpha, double T, int k) {
    std::vector<double> t(k + 1, 0.0);
    if (std::isinf(T) && T < 0) {
        return full_moments_normalized(alpha, k);
    }
    const double u = (T - alpha) / std::sqrt(2.0);
    if (k >= 1) t[1] = 0.5 * std::erfc(u);
    const double dens = std::exp(-0.5 * (T - alpha) * (T - alpha)) / std::sqrt(2.0 * M_PI);
    double Tpow = 1.0;  // T^{i-1}
    for (int i = 1; i < k; ++i) {
        t[i + 1] = alpha * t[i] + (i - 1) * (i >= 2 ? t[i - 1] : 0.0) + Tpow * dens;
        Tpow *= T;
    }
    return {t.begin() + 1, t.end()};
}

}  // namespace detail

std::complex<double> spiked_moment(int i, double alpha, double T, std::complex<double> s) {
    if (i < 1 || i > 20) throw DomainError("spiked_moment: need 1 <= i <= 20");
    if (std::abs(alpha) > 20.0) throw DomainError("spiked_moment: |alpha| > 20");
    const auto full = detail::full_moments_normalized(alpha, i);
    const auto tail = detail::tail_moments_normalized(alpha, T, i);
    const double scale = std::sqrt(2.0 * M_PI) * std::exp(0.5 * alpha * alpha);
    return scale * (full[i - 1] - s * tail[i - 1]);
}

}  // namespace rmt
