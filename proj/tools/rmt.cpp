// SPDX-License-Identifier: Apache-2.0
//
// Command-line driver: phase diagrams, limit-law tables, finite-n route
// verification, Monte Carlo sampling and law comparison, and transition
// weights, all wired through sectioned config files.
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rmt/config.hpp"
#include "rmt/equilibrium.hpp"
#include "rmt/errors.hpp"
#include "rmt/finite_ensemble.hpp"
#include "rmt/limit_laws.hpp"
#include "rmt/oracle.hpp"
#include "rmt/phase.hpp"
#include "rmt/sampler.hpp"
#include "rmt/transitions.hpp"

namespace {

using nlohmann::json;
using namespace rmt;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

void write_text(const std::string& path, const std::string& text) {
    std::ofstream os(path);
    if (!os) throw Error("cannot write " + path);
    os << text;
}

std::vector<double> make_grid(double lo, double hi, double step) {
    const int count = static_cast<int>(std::lround((hi - lo) / step)) + 1;
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i) g[i] = lo + i * step;
    return g;
}

// ---- regime machinery ----------------------------------------------------

struct RegimeSetup {
    std::vector<double> spikes;           // a_k(n) actually used
    json meta;                            // echoed scaling constants
    std::vector<double> outlier_x;        // per detached eigenvalue
    std::vector<double> outlier_g2;
};

RegimeSetup resolve_regime(const ExperimentConfig& ec, const EquilibriumData& eq) {
    RegimeSetup rs;
    rs.meta["regime"] = regime_name(ec.regime);
    const double n = static_cast<double>(ec.n);
    switch (ec.regime) {
        case Regime::Explicit:
        case Regime::Subcritical:
        case Regime::SupercriticalSeparated: {
            rs.spikes = ec.spikes;
            if (ec.regime == Regime::SupercriticalSeparated) {
                for (double a : ec.spikes) {
                    const CriticalValue cv = critical_ac(eq);
                    if (a > cv.a_c) {
                        const OutlierLocation loc = x0_of_a(eq, a);
                        rs.outlier_x.push_back(loc.x0);
                        rs.outlier_g2.push_back(loc.second_deriv);
                    }
                }
            }
            break;
        }
        case Regime::SupercriticalClustered: {
            const OutlierLocation loc = x0_of_a(eq, ec.regime_a);
            const double scale = std::sqrt(-loc.second_deriv);
            for (double al : ec.regime_alphas)
                rs.spikes.push_back(ec.regime_a + scale * al / std::sqrt(n));
            rs.meta["a"] = ec.regime_a;
            rs.meta["x0"] = loc.x0;
            rs.meta["G2"] = loc.second_deriv;
            rs.outlier_x.assign(ec.regime_alphas.size(), loc.x0);
            rs.outlier_g2.assign(ec.regime_alphas.size(), loc.second_deriv);
            break;
        }
        case Regime::SecondaryCritical: {
            const double w = 0.2 * (1.0 + std::abs(ec.regime_a));
            const auto scs = scan_secondary_criticals(eq, ec.regime_a - w, ec.regime_a + w, 40);
            if (scs.empty()) throw ConfigError("no secondary critical value near [model] a");
            const SecondaryCritical sc = scs.front();
            const double g2_1 = big_G_second(eq, sc.x1, sc.a_star);
            const double g2_2 = big_G_second(eq, sc.x2, sc.a_star);
            JumpScaling js = jump_scaling(sc.x1, sc.x2, g2_1, g2_2,
                                          static_cast<int>(ec.regime_alphas.size()), ec.regime_m);
            js.base_a = sc.a_star;
            for (double al : ec.regime_alphas) rs.spikes.push_back(js.spike(n, al));
            rs.meta["a_star"] = sc.a_star;
            rs.meta["x1"] = sc.x1;
            rs.meta["x2"] = sc.x2;
            rs.meta["q_m"] = js.q_m;
            rs.meta["K_m"] = js.K_m;
            rs.outlier_x = {sc.x1, sc.x2};
            rs.outlier_g2 = {g2_1, g2_2};
            break;
        }
        case Regime::CriticalContinuous: {
            const CriticalValue cv = critical_ac(eq);
            if (!cv.is_continuous)
                throw ConfigError("critical-continuous regime needs a_c = V'(e)/2");
            for (double al : ec.regime_alphas)
                rs.spikes.push_back(cv.a_c + eq.beta() * al / std::pow(n, 1.0 / 3.0));
            rs.meta["a_c"] = cv.a_c;
            rs.meta["beta"] = eq.beta();
            // the limiting law carries the opposite sign of alpha
            json neg = json::array();
            for (double al : ec.regime_alphas) neg.push_back(-al);
            rs.meta["law_alphas"] = neg;
            break;
        }
        case Regime::CriticalJump: {
            const CriticalValue cv = critical_ac(eq);
            if (cv.is_continuous)
                throw ConfigError("critical-jump regime needs a_c < V'(e)/2");
            const double c = c_of_a(eq, cv.a_c);
            const OutlierLocation loc = x0_of_a(eq, cv.a_c);
            const double h2 = big_H_second(eq, c);
            JumpScaling js = jump_scaling_tilde(c, loc.x0, h2, loc.second_deriv,
                                                static_cast<int>(ec.regime_alphas.size()),
                                                ec.regime_m);
            js.base_a = cv.a_c;
            for (double al : ec.regime_alphas) rs.spikes.push_back(js.spike(n, al));
            rs.meta["a_c"] = cv.a_c;
            rs.meta["c"] = c;
            rs.meta["x0"] = loc.x0;
            rs.meta["q_m"] = js.q_m;
            rs.meta["K_m"] = js.K_m;
            rs.outlier_x = {loc.x0};
            rs.outlier_g2 = {loc.second_deriv};
            break;
        }
    }
    json spikes = json::array();
    for (double a : rs.spikes) spikes.push_back(a);
    rs.meta["spikes"] = spikes;
    return rs;
}

SampleBatch run_sampler(const ExperimentConfig& ec, const RegimeSetup& rs) {
    if (ec.potential.is_gaussian())
        return sample_gaussian_spiked(ec.n, rs.spikes, ec.trials, ec.seed);
    return sample_general_mcmc(ec.potential, ec.n, rs.spikes, ec.trials, ec.steps, ec.seed);
}

// ---- subcommands -----------------------------------------------------------

int cmd_phase(const ExperimentConfig& ec) {
    const EquilibriumData eq = solve_equilibrium(ec.potential, ec.solver_init);
    const CriticalValue cv = critical_ac(eq);
    json out;
    out["potential"] = ec.potential.describe();
    out["e_tilde"] = eq.left_endpoint();
    out["e"] = eq.right_endpoint();
    out["beta"] = eq.beta();
    out["ell"] = eq.robin_constant();
    out["a_c"] = cv.a_c;
    out["is_continuous_transition"] = cv.is_continuous;

    json table = json::array();
    const double a_hi = cv.a_c + 2.0;
    for (int i = 1; i <= 10; ++i) {
        const double a = cv.a_c + (a_hi - cv.a_c) * i / 10.0;
        try {
            const OutlierLocation loc = x0_of_a(eq, a);
            table.push_back({{"a", a}, {"x0", loc.x0}, {"G2", loc.second_deriv}});
        } catch (const Error&) {
        }
    }
    out["x0_table"] = table;

    json sec = json::array();
    for (const auto& sc : scan_secondary_criticals(eq, cv.a_c + 1e-3, a_hi))
        sec.push_back({{"a_star", sc.a_star}, {"x1", sc.x1}, {"x2", sc.x2}, {"gap", sc.gap}});
    out["secondary_criticals"] = sec;

    std::cout << out.dump(2) << "\n";
    if (!ec.out_json.empty()) write_text(ec.out_json, out.dump(2));
    return kExitOk;
}

int cmd_law(const ExperimentConfig& ec) {
    LawCurve curve;
    curve.law = ec.law;
    curve.grid = make_grid(ec.grid_lo, ec.grid_hi, ec.grid_step);
    const cplx s(ec.law_s, 0.0);
    for (double T : curve.grid) {
        double v;
        if (ec.law == "tw")
            v = fredholm_tw(T, s).real();
        else if (ec.law == "tw_j")
            v = tw_jth(T, ec.law_j);
        else if (ec.law == "f1")
            v = f1(T, ec.law_alpha, s).real();
        else if (ec.law == "fk")
            v = fk(T, ec.law_alphas, s).real();
        else if (ec.law == "gk")
            v = gk(T, ec.law_alphas, s).real();
        else if (ec.law == "gk_j")
            v = gk_jth(T, ec.law_j, ec.law_k);
        else if (ec.law == "normal")
            v = normal_cdf(T);
        else
            throw ConfigError("unknown law: " + ec.law);
        curve.values.push_back(v);
    }
    if (ec.out_csv.empty()) {
        curve.write_csv(std::cout);
    } else {
        std::ofstream os(ec.out_csv);
        if (!os) throw Error("cannot write " + ec.out_csv);
        curve.write_csv(os);
        std::cout << "wrote " << curve.grid.size() << " rows to " << ec.out_csv << "\n";
    }
    return kExitOk;
}

struct VerifyCase {
    std::string name;
    Potential pot;
    int n, d;
    std::vector<double> spikes;
    double e_lo;  // E = [e_lo, inf)
    cplx s;
    bool brute;  // include the tensor-quadrature route (d <= 3)
};

int cmd_verify(const ExperimentConfig& ec) {
    (void)ec;
    const Potential gauss = Potential::gaussian();
    const Potential quartic = Potential::polynomial({0, 0, 0, 0, 0.25});
    const double e_q = solve_equilibrium(quartic).right_endpoint();
    const std::vector<VerifyCase> cases = {
        {"gaussian d=3 s=1", gauss, 3, 3, {0.5, 0.9}, 1.5, cplx(1.0, 0.0), true},
        {"gaussian d=4 s=0.6", gauss, 4, 4, {0.5, 0.9}, 1.5, cplx(0.6, 0.0), false},
        {"gaussian d=3 s=1+0.2i", gauss, 3, 3, {0.4, 1.1}, 1.0, cplx(1.0, 0.2), true},
        {"quartic d=3 s=0.7", quartic, 3, 3, {0.4, 0.8}, e_q + 0.2, cplx(0.7, 0.0), true},
    };
    bool all_ok = true;
    double worst = 0.0;
    for (const auto& c : cases) {
        const OrthoBasis basis = build_basis(c.pot, c.n, c.d);
        const SetE E = SetE::half_line(c.e_lo);
        const cplx direct = expectation_rank_m_direct(basis, c.d, c.spikes, E, c.s);
        const cplx identity = expectation_rank_m_identity(basis, c.d, c.spikes, E, c.s);
        const double resid = std::abs(identity - direct) / (1.0 + std::abs(direct));
        bool ok = resid < 1e-6;
        double bresid = 0.0;
        if (c.brute) {
            const cplx brute = brute_force_expectation(c.pot, c.n, c.d, c.spikes, E, c.s);
            bresid = std::abs(brute - direct) / (1.0 + std::abs(direct));
            ok = ok && bresid < 1e-6;
        }
        worst = std::max(worst, std::max(resid, bresid));
        all_ok = all_ok && ok;
        std::cout << (ok ? "PASS" : "FAIL") << "  " << c.name
                  << "  identity-vs-direct=" << resid
                  << (c.brute ? "  brute-vs-direct=" + std::to_string(bresid) : "") << "\n";
    }
    std::cout << (all_ok ? "verify: all routes agree" : "verify: FAILURES present")
              << " (worst residual " << worst << ")\n";
    return all_ok ? kExitOk : kExitFail;
}

int cmd_sample(const ExperimentConfig& ec) {
    const EquilibriumData eq = solve_equilibrium(ec.potential, ec.solver_init);
    const RegimeSetup rs = resolve_regime(ec, eq);
    const SampleBatch batch = run_sampler(ec, rs);
    json report = rs.meta;
    report["n"] = batch.n;
    report["trials"] = batch.trials;
    report["seed"] = batch.seed;
    report["method"] = batch.method;
    std::cout << report.dump(2) << "\n";
    if (!ec.out_samples.empty()) batch.save(ec.out_samples);
    if (!ec.out_csv.empty()) {
        std::ofstream os(ec.out_csv);
        batch.write_csv(os);
    }
    if (!ec.out_json.empty()) write_text(ec.out_json, report.dump(2));
    return kExitOk;
}

int cmd_compare(const ExperimentConfig& ec, double ks_tol) {
    const EquilibriumData eq = solve_equilibrium(ec.potential, ec.solver_init);
    const RegimeSetup rs = resolve_regime(ec, eq);
    const SampleBatch batch = run_sampler(ec, rs);
    const double e = eq.right_endpoint(), beta = eq.beta();
    const CriticalValue cv = critical_ac(eq);

    struct Row {
        int k;
        std::string law;
        double ks;
        RescaledStatistic stat;
        std::function<double(double)> cdf;
    };
    std::vector<Row> rows;

    auto curve_of = [](std::function<double(double)> f, double lo, double hi) {
        // tabulate once; KS evaluation interpolates the smooth curve
        LawCurve c;
        c.grid = make_grid(lo, hi, (hi - lo) / 120.0);
        for (double T : c.grid) c.values.push_back(f(T));
        return c;
    };

    switch (ec.regime) {
        case Regime::Explicit:
        case Regime::Subcritical: {
            RescaledStatistic st = rescale_edge(batch, 1, e, beta);
            auto cdf = [](double T) { return tw_jth(std::max(T, -11.0), 1); };
            const LawCurve c = curve_of(cdf, -11.0, 6.0);
            rows.push_back({1, "tw_1", 0.0, std::move(st), [c](double T) { return c.interpolate(T); }});
            break;
        }
        case Regime::SupercriticalSeparated: {
            int p = 0;
            for (std::size_t i = 0; i < rs.spikes.size(); ++i)
                if (rs.spikes[i] > cv.a_c) ++p;
            for (int j = 0; j < p; ++j) {
                RescaledStatistic st =
                    rescale_outlier(batch, j + 1, rs.outlier_x[j], rs.outlier_g2[j]);
                rows.push_back({j + 1, "normal", 0.0, std::move(st), normal_cdf});
            }
            RescaledStatistic st = rescale_edge(batch, p + 1, e, beta);
            auto cdf = [](double T) { return tw_jth(std::max(T, -11.0), 1); };
            const LawCurve c = curve_of(cdf, -11.0, 6.0);
            rows.push_back(
                {p + 1, "tw_1", 0.0, std::move(st), [c](double T) { return c.interpolate(T); }});
            break;
        }
        case Regime::SupercriticalClustered: {
            const int mm = static_cast<int>(ec.regime_alphas.size());
            for (int j = 1; j <= mm; ++j) {
                RescaledStatistic st =
                    rescale_outlier(batch, j, rs.outlier_x[0], rs.outlier_g2[0]);
                auto cdf = [j, al = ec.regime_alphas](double T) { return gk_jth(T, j, al); };
                const LawCurve c = curve_of(cdf, -8.0, 8.0);
                rows.push_back({j, "gk_" + std::to_string(j), 0.0, std::move(st),
                                [c](double T) { return c.interpolate(T); }});
            }
            break;
        }
        case Regime::SecondaryCritical: {
            const int mm = static_cast<int>(ec.regime_alphas.size());
            const int m = ec.regime_m;
            const double g2_1 = rs.outlier_g2[0], g2_2 = rs.outlier_g2[1];
            const OneCutFrame frame{eq.left_endpoint(), eq.right_endpoint()};
            const TransitionResult tr =
                p_m(frame, rs.outlier_x[0], rs.outlier_x[1], g2_1, g2_2, mm, m,
                    ec.regime_alphas);
            for (int k = 1; k <= m; ++k) {
                RescaledStatistic st = rescale_outlier(batch, k, rs.outlier_x[1], g2_2);
                auto f = mixture_prediction(tr, k, mm, m, MixturePoint::X2);
                const LawCurve c = curve_of(f, -8.0, 8.0);
                rows.push_back({k, "mixture_x2_" + std::to_string(k), 0.0, std::move(st),
                                [c](double T) { return c.interpolate(T); }});
            }
            for (int k = m; k <= mm; ++k) {
                RescaledStatistic st = rescale_outlier(batch, k, rs.outlier_x[0], g2_1);
                auto f = mixture_prediction(tr, k, mm, m, MixturePoint::X1);
                const LawCurve c = curve_of(f, -8.0, 8.0);
                rows.push_back({k, "mixture_x1_" + std::to_string(k), 0.0, std::move(st),
                                [c](double T) { return c.interpolate(T); }});
            }
            break;
        }
        case Regime::CriticalContinuous: {
            const int mm = static_cast<int>(ec.regime_alphas.size());
            std::vector<double> neg;
            for (double al : ec.regime_alphas) neg.push_back(-al);
            std::sort(neg.begin(), neg.end());
            RescaledStatistic st = rescale_edge(batch, ec.eigenvalue_index, e, beta);
            auto cdf = [j = ec.eigenvalue_index, neg](double T) {
                return fk_jth(std::max(T, -9.0), j, neg);
            };
            const LawCurve c = curve_of(cdf, -8.0, 6.0);
            rows.push_back({ec.eigenvalue_index, "fk_" + std::to_string(mm), 0.0, std::move(st),
                            [c](double T) { return c.interpolate(T); }});
            break;
        }
        case Regime::CriticalJump: {
            const int mm = static_cast<int>(ec.regime_alphas.size());
            const int m = ec.regime_m;
            const double c_pt = c_of_a(eq, cv.a_c);
            const OneCutFrame frame{eq.left_endpoint(), eq.right_endpoint()};
            const TransitionResult tr =
                p_tilde_m(frame, c_pt, rs.outlier_x[0], big_H_second(eq, c_pt),
                          rs.outlier_g2[0], mm, m, ec.regime_alphas);
            for (int k = 1; k <= m; ++k) {
                RescaledStatistic st = rescale_outlier(batch, k, rs.outlier_x[0],
                                                       rs.outlier_g2[0]);
                auto f = mixture_prediction(tr, k, mm, m, MixturePoint::X2);
                const LawCurve c = curve_of(f, -8.0, 8.0);
                rows.push_back({k, "mixture_x0_" + std::to_string(k), 0.0, std::move(st),
                                [c](double T) { return c.interpolate(T); }});
            }
            break;
        }
    }

    json report = rs.meta;
    json comparisons = json::array();
    bool ok = true;
    std::ostringstream csv;
    csv << "eigenvalue,law,T,empirical,predicted\n" << std::setprecision(17);
    for (auto& row : rows) {
        row.ks = ks_distance(row.stat.values, row.cdf);
        ok = ok && (ks_tol <= 0.0 || row.ks < ks_tol);
        comparisons.push_back({{"eigenvalue", row.k}, {"law", row.law}, {"ks", row.ks}});
        std::cout << "eigenvalue " << row.k << " vs " << row.law << ": KS = " << row.ks << "\n";
        std::vector<double> sorted = row.stat.values;
        std::sort(sorted.begin(), sorted.end());
        const std::size_t stride = std::max<std::size_t>(1, sorted.size() / 200);
        for (std::size_t i = 0; i < sorted.size(); i += stride)
            csv << row.k << "," << row.law << "," << sorted[i] << ","
                << (i + 1.0) / sorted.size() << "," << row.cdf(sorted[i]) << "\n";
    }
    report["comparisons"] = comparisons;
    if (!ec.out_json.empty()) write_text(ec.out_json, report.dump(2));
    if (!ec.out_csv.empty()) write_text(ec.out_csv, csv.str());
    return ok ? kExitOk : kExitFail;
}

int cmd_transition(const ExperimentConfig& ec) {
    const EquilibriumData eq = solve_equilibrium(ec.potential, ec.solver_init);
    const OneCutFrame frame{eq.left_endpoint(), eq.right_endpoint()};
    const int mm = static_cast<int>(ec.regime_alphas.size());
    json out;
    if (ec.regime == Regime::CriticalJump) {
        const CriticalValue cv = critical_ac(eq);
        const double c = c_of_a(eq, cv.a_c);
        const OutlierLocation loc = x0_of_a(eq, cv.a_c);
        const TransitionResult tr = p_tilde_m(frame, c, loc.x0, big_H_second(eq, c),
                                              loc.second_deriv, mm, ec.regime_m,
                                              ec.regime_alphas);
        out = json::parse(tr.to_json());
        const JumpScaling js = jump_scaling_tilde(c, loc.x0, big_H_second(eq, c),
                                                  loc.second_deriv, mm, ec.regime_m);
        out["q_m"] = js.q_m;
        out["K_m"] = js.K_m;
        out["kind"] = "critical-jump";
    } else {
        const double w = 0.2 * (1.0 + std::abs(ec.regime_a));
        const auto scs = scan_secondary_criticals(eq, ec.regime_a - w, ec.regime_a + w, 40);
        if (scs.empty()) throw ConfigError("no secondary critical value near [model] a");
        const SecondaryCritical sc = scs.front();
        const double g2_1 = big_G_second(eq, sc.x1, sc.a_star);
        const double g2_2 = big_G_second(eq, sc.x2, sc.a_star);
        const TransitionResult tr =
            p_m(frame, sc.x1, sc.x2, g2_1, g2_2, mm, ec.regime_m, ec.regime_alphas);
        out = json::parse(tr.to_json());
        const JumpScaling js = jump_scaling(sc.x1, sc.x2, g2_1, g2_2, mm, ec.regime_m);
        out["q_m"] = js.q_m;
        out["K_m"] = js.K_m;
        out["a_star"] = sc.a_star;
        out["kind"] = "secondary-critical";
    }
    std::cout << out.dump(2) << "\n";
    if (!ec.out_json.empty()) write_text(ec.out_json, out.dump(2));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spiked Hermitian matrix model laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    long long seed_override = -1;
    double ks_tol = 0.0;

    auto add_common = [&](CLI::App* sub, bool need_config) {
        auto* opt = sub->add_option("-c,--config", config_path, "config file");
        if (need_config) opt->required();
        sub->add_option("--seed", seed_override, "override [run] seed");
    };

    CLI::App* phase = app.add_subcommand("phase", "equilibrium measure and phase diagram");
    add_common(phase, true);
    CLI::App* law = app.add_subcommand("law", "tabulate a limiting law as CSV");
    add_common(law, true);
    CLI::App* verify = app.add_subcommand("verify", "finite-n route-equivalence suite");
    add_common(verify, false);
    CLI::App* sample = app.add_subcommand("sample", "draw eigenvalue samples");
    add_common(sample, true);
    CLI::App* compare = app.add_subcommand("compare", "samples vs predicted laws (KS)");
    add_common(compare, true);
    compare->add_option("--ks-tol", ks_tol, "fail (exit 1) when any KS exceeds this");
    CLI::App* transition = app.add_subcommand("transition", "jump mixture weights");
    add_common(transition, true);

    CLI11_PARSE(app, argc, argv);

    ExperimentConfig ec;
    try {
        if (!config_path.empty()) ec = ExperimentConfig::from_config(Config::parse_file(config_path));
        if (seed_override >= 0) ec.seed = static_cast<std::uint64_t>(seed_override);
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (phase->parsed()) return cmd_phase(ec);
        if (law->parsed()) return cmd_law(ec);
        if (verify->parsed()) return cmd_verify(ec);
        if (sample->parsed()) return cmd_sample(ec);
        if (compare->parsed()) return cmd_compare(ec, ks_tol);
        if (transition->parsed()) return cmd_transition(ec);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitConfig;
}
