// SPDX-License-Identifier: Apache-2.0
#include "rmt/potential.hpp"

#include <cmath>
#include <sstream>

#include "rmt/errors.hpp"

namespace rmt {

double polyval(const std::vector<double>& coeffs, double x) {
    double v = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
    return v;
}

std::vector<double> polyder(const std::vector<double>& coeffs) {
    if (coeffs.size() <= 1) return {0.0};
    std::vector<double> d(coeffs.size() - 1);
    for (std::size_t k = 1; k < coeffs.size(); ++k) d[k - 1] = k * coeffs[k];
    return d;
}

Potential Potential::gaussian() {
    Potential p = polynomial({0.0, 0.0, 0.5});
    p.gaussian_ = true;
    return p;
}

Potential Potential::polynomial(std::vector<double> coeffs) {
    while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
    const int deg = static_cast<int>(coeffs.size()) - 1;
    if (deg < 2 || deg % 2 != 0 || coeffs.back() <= 0.0)
        throw NonConfining("potential: need even degree >= 2 with positive leading coefficient");
    Potential p;
    p.c_ = std::move(coeffs);
    p.cp_ = polyder(p.c_);
    p.cpp_ = polyder(p.cp_);
    return p;
}

double Potential::V(double x) const { return polyval(c_, x); }
double Potential::Vp(double x) const { return polyval(cp_, x); }
double Potential::Vpp(double x) const { return polyval(cpp_, x); }

void Potential::validate() const {
    // bound beyond which the leading term dominates everything else
    double bound = 1.0;
    for (std::size_t k = 0; k + 1 < c_.size(); ++k)
        bound = std::max(bound, 2.0 * std::pow((std::abs(c_[k]) + 2.0) / c_.back(),
                                               1.0 / (c_.size() - 1 - k)));
    for (int i = 0; i <= 50; ++i) {
        const double x = bound * (1.0 + 0.2 * i);
        if (!(V(x) > 2.0 * std::abs(x)) || !(V(-x) > 2.0 * std::abs(x)))
            throw NonConfining("potential: V(x) <= 2|x| on the growth test grid");
    }
}

std::string Potential::describe() const {
    if (gaussian_) return "gaussian";
    std::ostringstream os;
    os << "poly[";
    for (std::size_t k = 0; k < c_.size(); ++k) os << (k ? "," : "") << c_[k];
    os << "]";
    return os.str();
}

}  // namespace rmt
