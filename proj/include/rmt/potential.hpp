// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

namespace rmt {

// Confining external-field potential.  Either an explicit real polynomial
// (ascending coefficients, even degree, positive leading coefficient) or
// the builtin "gaussian", V(x) = x^2/2.
class Potential {
  public:
    static Potential gaussian();
    static Potential polynomial(std::vector<double> coeffs);

    double V(double x) const;
    double Vp(double x) const;   // V'
    double Vpp(double x) const;  // V''

    const std::vector<double>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_gaussian() const { return gaussian_; }

    std::optional<bool> convex_beyond_edge;  // caller hint, optional

    // Checks superlinear growth numerically: V(x) > 2|x| on a grid beyond a
    // computed bound.  Throws NonConfining on failure.
    void validate() const;

    std::string describe() const;

  private:
    Potential() = default;
    std::vector<double> c_;   // V coefficients, ascending
    std::vector<double> cp_;  // V'
    std::vector<double> cpp_; // V''
    bool gaussian_ = false;
};

double polyval(const std::vector<double>& coeffs, double x);
std::vector<double> polyder(const std::vector<double>& coeffs);

}  // namespace rmt
