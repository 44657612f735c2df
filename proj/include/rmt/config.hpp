// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rmt/potential.hpp"

namespace rmt {

// Sectioned key-value configuration (UTF-8 text, '#' comments, decimals).
class Config {
  public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    bool has(const std::string& section, const std::string& key) const;
    std::string get_str(const std::string& section, const std::string& key) const;
    std::string get_str(const std::string& section, const std::string& key,
                        const std::string& fallback) const;
    double get_num(const std::string& section, const std::string& key) const;
    double get_num(const std::string& section, const std::string& key, double fallback) const;
    long long get_int(const std::string& section, const std::string& key) const;
    long long get_int(const std::string& section, const std::string& key,
                      long long fallback) const;
    std::vector<double> get_list(const std::string& section, const std::string& key) const;

  private:
    std::map<std::string, std::map<std::string, std::string>> data_;
};

enum class Regime {
    Explicit,
    Subcritical,
    SupercriticalSeparated,
    SupercriticalClustered,
    SecondaryCritical,
    CriticalContinuous,
    CriticalJump,
};

Regime parse_regime(const std::string& name);
std::string regime_name(Regime r);

// Experiment description assembled from a config file.
struct ExperimentConfig {
    Potential potential = Potential::gaussian();
    std::optional<std::pair<double, double>> solver_init;

    int n = 100;
    Regime regime = Regime::Explicit;
    std::vector<double> spikes;  // explicit list (Regime::Explicit/Subcritical/Separated)
    double regime_a = 0.0;       // base spike for scaling regimes
    std::vector<double> regime_alphas;
    int regime_m = 1;  // jump index for the log-corrected regimes

    std::string law = "tw";
    int law_j = 1;
    int law_k = 1;
    double law_alpha = 0.0;
    std::vector<double> law_alphas;
    double law_s = 1.0;
    double grid_lo = -6.0, grid_hi = 4.0, grid_step = 0.1;

    std::uint64_t trials = 1000;
    std::uint64_t steps = 3000;
    std::uint64_t seed = 1;
    int eigenvalue_index = 1;

    std::string out_csv, out_json, out_samples;

    static ExperimentConfig from_config(const Config& cfg);
};

}  // namespace rmt
