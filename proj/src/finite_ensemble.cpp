// SPDX-License-Identifier: Apache-2.0
#include "rmt/finite_ensemble.hpp"

#include <algorithm>
#include <cmath>

#include "rmt/errors.hpp"
#include "rmt/quadrature.hpp"

namespace rmt {

namespace {

using cplx = std::complex<double>;

constexpr double kMinSpikeGap = 1e-8;
constexpr int kCauchyNodes = 64;
constexpr double kCauchyRadius = 0.5;

void check_spikes(const std::vector<double>& a_list) {
    for (double a : a_list)
        if (a == 0.0) throw DomainError("spikes must be nonzero");
    for (std::size_t i = 0; i < a_list.size(); ++i)
        for (std::size_t j = i + 1; j < a_list.size(); ++j)
            if (std::abs(a_list[i] - a_list[j]) < kMinSpikeGap)
                throw ConfluentAlphas("spike gap below 1e-8");
}

// Composite rule on E clipped to the basis grid range, with panel edges on
// the interval boundaries, plus the psi table at its nodes.
struct ERule {
    std::vector<double> x, w;
    Eigen::MatrixXd Psi;  // nodes x d

    ERule(const OrthoBasis& basis, int d, const SetE& E) {
        const double glo = basis.grid_nodes().front();
        const double ghi = basis.grid_nodes().back();
        std::vector<std::pair<double, double>> segs;
        for (auto [lo, hi] : E.intervals) {
            lo = std::max(lo, glo);
            hi = std::min(hi, ghi);
            if (lo < hi) segs.emplace_back(lo, hi);
        }
        std::sort(segs.begin(), segs.end());
        for (const auto& [lo, hi] : segs) {
            const int panels = std::max(24, static_cast<int>(48.0 * (hi - lo) / (ghi - glo)));
            std::vector<double> breaks;
            for (int i = 0; i <= panels; ++i) breaks.push_back(lo + (hi - lo) * i / panels);
            const QuadratureRule rule = composite_gauss_legendre(40, breaks);
            x.insert(x.end(), rule.nodes.begin(), rule.nodes.end());
            w.insert(w.end(), rule.weights.begin(), rule.weights.end());
        }
        Psi.resize(static_cast<Eigen::Index>(x.size()), d);
        std::vector<double> vals(std::max(d, 1));
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (d > 0) basis.psi_all(d - 1, x[i], vals.data());
            for (int l = 0; l < d; ++l) Psi(static_cast<Eigen::Index>(i), l) = vals[l];
        }
    }

    Eigen::MatrixXd gram() const {
        Eigen::MatrixXd G = Eigen::MatrixXd::Zero(Psi.cols(), Psi.cols());
        for (Eigen::Index i = 0; i < Psi.rows(); ++i)
            G += w[static_cast<std::size_t>(i)] * Psi.row(i).transpose() * Psi.row(i);
        return G;
    }

    // int_E psi_l vhat_a for l < d, with vhat_a = e^{n(a x - V/2)}
    Eigen::VectorXd vhat_integrals(const OrthoBasis& basis, double a) const {
        Eigen::VectorXd out = Eigen::VectorXd::Zero(Psi.cols());
        const int n = basis.n();
        const Potential& pot = basis.potential();
        for (Eigen::Index i = 0; i < Psi.rows(); ++i) {
            const double xx = x[static_cast<std::size_t>(i)];
            const double vh = std::exp(n * (a * xx - 0.5 * pot.V(xx)));
            out += w[static_cast<std::size_t>(i)] * vh * Psi.row(i).transpose();
        }
        return out;
    }
};

std::vector<double> gamma_vector(const OrthoBasis& basis, int d, double a) {
    std::vector<double> g(d);
    for (int l = 0; l < d; ++l) g[l] = gamma_j(basis, l, a);
    return g;
}

cplx rank_one_impl(const OrthoBasis& basis, int d, double a, const ERule& rule,
                   const std::vector<double>& gammas, cplx s) {
    // dimensions: kernel K_{d-1}, functions psi_0..psi_{d-1}
    const Eigen::MatrixXd M = rule.gram();                 // d x d
    const Eigen::VectorXd wv = rule.vhat_integrals(basis, a);  // d
    const double gamma_top = gammas[d - 1];
    if (std::abs(gamma_top) < 1e-12) throw SingularGammaMatrix("rank one: Gamma_{d-1}(a) ~ 0");

    // <psi_i, P psi~_{d-1}> for i < d
    Eigen::VectorXd y(d);
    for (int i = 0; i < d; ++i) {
        double acc = wv(i);
        for (int l = 0; l < d - 1; ++l) acc -= gammas[l] * M(i, l);
        y(i) = acc / gamma_top;
    }

    const int dm = d - 1;
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(dm, dm) -
                         s * M.topLeftCorner(dm, dm).cast<cplx>();
    const cplx det_null_dm = A.partialPivLu().determinant();

    // term1 = <psi~_{d-1}, P psi_{d-1}>
    const cplx term1 = y(d - 1);
    // term2 = <(1-sPKP)^{-1} P K P psi~, P psi_{d-1}>
    Eigen::VectorXcd g = A.partialPivLu().solve(y.head(dm).cast<cplx>());
    cplx term2 = 0.0;
    for (int i = 0; i < dm; ++i) term2 += g(i) * M(i, d - 1);

    return det_null_dm * (1.0 - s * term1 - s * s * term2);
}

}  // namespace

GramRestriction gram_restriction(const OrthoBasis& basis, int d, const SetE& E) {
    if (d < 0 || d > basis.max_degree() + 1)
        throw DomainError("gram_restriction: d beyond the basis degree");
    GramRestriction gr;
    gr.set = E;
    gr.G = ERule(basis, d, E).gram();
    return gr;
}

SpikedKernelData build_spiked_kernel(const OrthoBasis& basis, int d,
                                     const std::vector<double>& a_list) {
    check_spikes(a_list);
    const int m = static_cast<int>(a_list.size());
    if (m > d) throw DomainError("build_spiked_kernel: rank above dimension");
    SpikedKernelData data;
    data.spikes = a_list;
    data.B.resize(m, m);
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) data.B(j, k) = gamma_j(basis, d - m + j, a_list[k]);
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(data.B);
    const double smin = svd.singularValues()(m - 1);
    data.condition_number = smin > 0.0 ? svd.singularValues()(0) / smin
                                       : std::numeric_limits<double>::infinity();
    if (data.condition_number > 1e12)
        throw IllConditionedB("spiked kernel: B condition number above 1e12");
    return data;
}

std::complex<double> expectation_null(const OrthoBasis& basis, int d, const SetE& E,
                                      std::complex<double> s) {
    if (d == 0) return 1.0;
    const Eigen::MatrixXd G = ERule(basis, d, E).gram();
    const Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(d, d) - s * G.cast<cplx>();
    return A.partialPivLu().determinant();
}

std::complex<double> expectation_rank_one(const OrthoBasis& basis, int d, double a, const SetE& E,
                                          std::complex<double> s) {
    if (a == 0.0) throw DomainError("expectation_rank_one: spike must be nonzero");
    if (d < 1 || d > basis.max_degree() + 1) throw DomainError("expectation_rank_one: bad d");
    const ERule rule(basis, d, E);
    return rank_one_impl(basis, d, a, rule, gamma_vector(basis, d, a), s);
}

std::complex<double> expectation_rank_m_direct(const OrthoBasis& basis, int d,
                                               const std::vector<double>& a_list, const SetE& E,
                                               std::complex<double> s) {
    if (a_list.empty()) return expectation_null(basis, d, E, s);
    check_spikes(a_list);
    const int m = static_cast<int>(a_list.size());
    if (m > d) throw DomainError("expectation_rank_m_direct: rank above dimension");

    const ERule rule(basis, d, E);
    const Eigen::MatrixXd M = rule.gram();
    const SpikedKernelData spike = build_spiked_kernel(basis, d, a_list);
    const Eigen::PartialPivLU<Eigen::MatrixXd> Blu(spike.B);

    // <psi_i, P w^_j> = int_E psi_i vhat_j - sum_l Gamma_l(a_j) M_{il}
    Eigen::MatrixXd PW(d, m);
    for (int j = 0; j < m; ++j) {
        const Eigen::VectorXd wv = rule.vhat_integrals(basis, a_list[j]);
        Eigen::VectorXd col = wv;
        for (int l = 0; l < d; ++l) {
            const double gl = gamma_j(basis, l, a_list[j]);
            col -= gl * M.col(l);
        }
        PW.col(j) = col;
    }

    // restriction matrix of the perturbed kernel: C = M + PW B^{-1} on the
    // top-m columns
    Eigen::MatrixXd C = M;
    const Eigen::MatrixXd Binv_cols = Blu.solve(Eigen::MatrixXd::Identity(m, m));
    const Eigen::MatrixXd extra = PW * Binv_cols;  // d x m
    for (int k = 0; k < m; ++k) C.col(d - m + k) += extra.col(k);

    const Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(d, d) - s * C.cast<cplx>();
    return A.partialPivLu().determinant();
}

std::complex<double> expectation_rank_m_identity(const OrthoBasis& basis, int d,
                                                 const std::vector<double>& a_list, const SetE& E,
                                                 std::complex<double> s) {
    if (a_list.empty()) return expectation_null(basis, d, E, s);
    check_spikes(a_list);
    const int m = static_cast<int>(a_list.size());
    if (m > d) throw DomainError("expectation_rank_m_identity: rank above dimension");

    Eigen::MatrixXcd N(m, m);
    Eigen::MatrixXd D(m, m);
    for (int j = 1; j <= m; ++j) {
        const int dim = d - j + 1;  // rank-one model dimension
        const ERule rule(basis, dim, E);
        const cplx null_dim = expectation_null(basis, dim, E, s);
        if (std::abs(null_dim) < 1e-13)
            throw HypothesisViolated("identity route: unspiked expectation vanishes");
        for (int k = 0; k < m; ++k) {
            const auto gammas = gamma_vector(basis, dim, a_list[k]);
            const cplx bar = rank_one_impl(basis, dim, a_list[k], rule, gammas, s) / null_dim;
            D(j - 1, k) = gammas[dim - 1];  // Gamma_{d-j}(a_k)
            N(j - 1, k) = gammas[dim - 1] * bar;
        }
    }
    const double detD = D.partialPivLu().determinant();
    double scale = D.cwiseAbs().maxCoeff();
    if (std::abs(detD) < 1e-13 * std::pow(std::max(scale, 1e-300), m))
        throw SingularGammaMatrix("identity route: det Gamma matrix ~ 0");
    const cplx detN = N.partialPivLu().determinant();
    return detN / detD * expectation_null(basis, d, E, s);
}

double gap_prob(const OrthoBasis& basis, int d, const std::vector<double>& a_list, const SetE& E,
                int j) {
    if (j < 1 || j > 4) throw DomainError("gap_prob: need 1 <= j <= 4");
    auto f = [&](cplx s) { return expectation_rank_m_direct(basis, d, a_list, E, s); };
    if (j == 1) return f(cplx(1.0)).real();
    std::vector<cplx> vals(kCauchyNodes);
    for (int k = 0; k < kCauchyNodes; ++k) {
        const double th = 2.0 * M_PI * k / kCauchyNodes;
        vals[k] = f(cplx(1.0 + kCauchyRadius * std::cos(th), kCauchyRadius * std::sin(th)));
    }
    cplx acc = 0.0;
    double fact = 1.0;
    for (int i = 0; i < j; ++i) {
        if (i > 0) fact *= i;
        cplx der = 0.0;
        for (int k = 0; k < kCauchyNodes; ++k) {
            const double th = 2.0 * M_PI * k / kCauchyNodes;
            der += vals[k] * std::polar(1.0, -i * th);
        }
        der *= fact / (double(kCauchyNodes) * std::pow(kCauchyRadius, i));
        acc += (i % 2 ? -1.0 : 1.0) / fact * der;
    }
    return acc.real();
}

}  // namespace rmt
