// SPDX-License-Identifier: Apache-2.0
#include "rmt/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "rmt/errors.hpp"

namespace rmt {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_string(ss.str());
}

Config Config::parse_string(const std::string& text) {
    Config cfg;
    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key = value at line " + std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key at line " + std::to_string(lineno));
        cfg.data_[section][key] = val;
    }
    return cfg;
}

bool Config::has(const std::string& section, const std::string& key) const {
    const auto s = data_.find(section);
    return s != data_.end() && s->second.count(key) > 0;
}

std::string Config::get_str(const std::string& section, const std::string& key) const {
    const auto s = data_.find(section);
    if (s == data_.end() || !s->second.count(key))
        throw ConfigError("missing config key [" + section + "] " + key);
    return s->second.at(key);
}

std::string Config::get_str(const std::string& section, const std::string& key,
                            const std::string& fallback) const {
    return has(section, key) ? get_str(section, key) : fallback;
}

double Config::get_num(const std::string& section, const std::string& key) const {
    const std::string v = get_str(section, key);
    std::size_t pos = 0;
    double out;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("not a number: [" + section + "] " + key + " = " + v);
    }
    if (pos != v.size()) throw ConfigError("trailing junk in [" + section + "] " + key);
    return out;
}

double Config::get_num(const std::string& section, const std::string& key,
                       double fallback) const {
    return has(section, key) ? get_num(section, key) : fallback;
}

long long Config::get_int(const std::string& section, const std::string& key) const {
    const double v = get_num(section, key);
    const long long i = static_cast<long long>(v);
    if (static_cast<double>(i) != v)
        throw ConfigError("expected an integer: [" + section + "] " + key);
    return i;
}

long long Config::get_int(const std::string& section, const std::string& key,
                          long long fallback) const {
    return has(section, key) ? get_int(section, key) : fallback;
}

std::vector<double> Config::get_list(const std::string& section, const std::string& key) const {
    const std::string v = get_str(section, key);
    std::vector<double> out;
    std::istringstream is(v);
    std::string item;
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError("empty list item in [" + section + "] " + key);
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("bad list item '" + item + "' in [" + section + "] " + key);
        }
    }
    if (out.empty()) throw ConfigError("empty list: [" + section + "] " + key);
    return out;
}

Regime parse_regime(const std::string& name) {
    if (name == "explicit") return Regime::Explicit;
    if (name == "subcritical") return Regime::Subcritical;
    if (name == "supercritical-separated") return Regime::SupercriticalSeparated;
    if (name == "supercritical-clustered") return Regime::SupercriticalClustered;
    if (name == "secondary-critical") return Regime::SecondaryCritical;
    if (name == "critical-continuous") return Regime::CriticalContinuous;
    if (name == "critical-jump") return Regime::CriticalJump;
    throw ConfigError("unknown regime: " + name);
}

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::Explicit: return "explicit";
        case Regime::Subcritical: return "subcritical";
        case Regime::SupercriticalSeparated: return "supercritical-separated";
        case Regime::SupercriticalClustered: return "supercritical-clustered";
        case Regime::SecondaryCritical: return "secondary-critical";
        case Regime::CriticalContinuous: return "critical-continuous";
        case Regime::CriticalJump: return "critical-jump";
    }
    return "?";
}

ExperimentConfig ExperimentConfig::from_config(const Config& cfg) {
    ExperimentConfig ec;
    const std::string kind = cfg.get_str("potential", "kind", "gaussian");
    if (kind == "gaussian") {
        ec.potential = Potential::gaussian();
    } else if (kind == "poly") {
        try {
            ec.potential = Potential::polynomial(cfg.get_list("potential", "coeffs"));
        } catch (const NonConfining& e) {
            throw ConfigError(std::string("invalid potential: ") + e.what());
        }
    } else {
        throw ConfigError("potential kind must be 'gaussian' or 'poly'");
    }
    if (cfg.has("potential", "convex_beyond_edge"))
        ec.potential.convex_beyond_edge = cfg.get_int("potential", "convex_beyond_edge") != 0;
    if (cfg.has("potential", "init_lo") || cfg.has("potential", "init_hi"))
        ec.solver_init = {cfg.get_num("potential", "init_lo"),
                          cfg.get_num("potential", "init_hi")};

    ec.n = static_cast<int>(cfg.get_int("model", "n", 100));
    ec.regime = parse_regime(cfg.get_str("model", "regime", "explicit"));
    if (cfg.has("model", "spikes")) ec.spikes = cfg.get_list("model", "spikes");
    ec.regime_a = cfg.get_num("model", "a", 0.0);
    if (cfg.has("model", "alphas")) ec.regime_alphas = cfg.get_list("model", "alphas");
    ec.regime_m = static_cast<int>(cfg.get_int("model", "m", 1));

    ec.law = cfg.get_str("law", "law", "tw");
    ec.law_j = static_cast<int>(cfg.get_int("law", "j", 1));
    ec.law_k = static_cast<int>(cfg.get_int("law", "k", 1));
    ec.law_alpha = cfg.get_num("law", "alpha", 0.0);
    if (cfg.has("law", "alphas")) ec.law_alphas = cfg.get_list("law", "alphas");
    ec.law_s = cfg.get_num("law", "s", 1.0);
    ec.grid_lo = cfg.get_num("law", "grid_lo", -6.0);
    ec.grid_hi = cfg.get_num("law", "grid_hi", 4.0);
    ec.grid_step = cfg.get_num("law", "grid_step", 0.1);
    if (!(ec.grid_step > 0.0) || !(ec.grid_lo < ec.grid_hi))
        throw ConfigError("invalid law grid");

    ec.trials = static_cast<std::uint64_t>(cfg.get_int("run", "trials", 1000));
    ec.steps = static_cast<std::uint64_t>(cfg.get_int("run", "steps", 3000));
    ec.seed = static_cast<std::uint64_t>(cfg.get_int("run", "seed", 1));
    ec.eigenvalue_index = static_cast<int>(cfg.get_int("run", "eigenvalue_index", 1));

    ec.out_csv = cfg.get_str("output", "csv", "");
    ec.out_json = cfg.get_str("output", "json", "");
    ec.out_samples = cfg.get_str("output", "samples", "");

    // regime completeness
    switch (ec.regime) {
        case Regime::Explicit:
        case Regime::Subcritical:
        case Regime::SupercriticalSeparated:
            if (ec.spikes.empty() && ec.regime != Regime::Explicit)
                throw ConfigError("regime requires [model] spikes");
            break;
        case Regime::SupercriticalClustered:
        case Regime::SecondaryCritical:
            if (ec.regime_alphas.empty() || ec.regime_a == 0.0)
                throw ConfigError("regime requires [model] a and alphas");
            break;
        case Regime::CriticalContinuous:
        case Regime::CriticalJump:
            if (ec.regime_alphas.empty())
                throw ConfigError("regime requires [model] alphas");
            break;
    }
    for (std::size_t i = 0; i < ec.spikes.size(); ++i)
        for (std::size_t j = i + 1; j < ec.spikes.size(); ++j)
            if (ec.spikes[i] == ec.spikes[j]) throw ConfigError("spikes must be distinct");
    return ec;
}

}  // namespace rmt
