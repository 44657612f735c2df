// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>

namespace rmt::detail {

// Shared machinery for integrals of e^{i z^3/3 + i xi z} * q(z) along the
// rays arg z = pi/6 and arg z = 5 pi/6.  The two rays are conjugate images
// of each other under z -> -conj(z), so for real-valued q-symmetry the sum
// collapses to 2 Re of the right-ray integral.
//
// Panel layout in the radial variable r; the integrand decays like
// e^{-r^3/3 + |xi| r / 2}, so r = 9 suffices for |xi| <= 40.
inline constexpr std::array<double, 12> kRayBreaks = {0.0, 0.25, 0.5, 1.0, 1.5, 2.0,
                                                      3.0, 4.0,  5.0, 6.0, 7.5, 9.0};
inline constexpr int kRayNodesPerPanel = 24;

inline std::complex<double> cubic_phase(std::complex<double> z, double xi) {
    const std::complex<double> i(0.0, 1.0);
    return i * z * z * z / 3.0 + i * xi * z;
}

}  // namespace rmt::detail
