// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

#ifndef RMT_CLI_PATH
#define RMT_CLI_PATH "./rmt"
#endif

int run(const std::string& args, std::string* out = nullptr) {
    const std::string redirect = out ? " > cli_test_stdout.txt 2>&1" : " > /dev/null 2>&1";
    const int rc = std::system((std::string(RMT_CLI_PATH) + " " + args + redirect).c_str());
    if (out) {
        std::ifstream is("cli_test_stdout.txt");
        std::stringstream ss;
        ss << is.rdbuf();
        *out = ss.str();
    }
    return WEXITSTATUS(rc);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream os(path);
    os << text;
}

std::vector<std::pair<double, double>> read_csv(const std::string& path) {
    std::ifstream is(path);
    REQUIRE(is.good());
    std::string line;
    std::getline(is, line);
    REQUIRE(line == "T,value");
    std::vector<std::pair<double, double>> rows;
    while (std::getline(is, line)) {
        const auto comma = line.find(',');
        rows.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }
    return rows;
}

}  // namespace

TEST_CASE("malformed config exits with code 2") {
    write_file("bad.cfg", "[potential\nkind = gaussian\n");
    CHECK(run("phase -c bad.cfg") == 2);
    write_file("bad2.cfg", "[potential]\nkind = nosuch\n");
    CHECK(run("phase -c bad2.cfg") == 2);
    std::remove("bad.cfg");
    std::remove("bad2.cfg");
}

TEST_CASE("phase report for the gaussian") {
    write_file("phase.cfg",
               "[potential]\nkind = gaussian\n[output]\njson = phase_out.json\n");
    CHECK(run("phase -c phase.cfg") == 0);
    std::ifstream is("phase_out.json");
    nlohmann::json j;
    is >> j;
    CHECK(std::abs(j["a_c"].get<double>() - 1.0) < 1e-8);
    CHECK(std::abs(j["e"].get<double>() - 2.0) < 1e-9);
    CHECK(std::abs(j["beta"].get<double>() - 1.0) < 1e-9);
    CHECK(j["is_continuous_transition"].get<bool>());
    CHECK(j["secondary_criticals"].empty());
    std::remove("phase.cfg");
    std::remove("phase_out.json");
}

TEST_CASE("phase report for the quartic is one-cut") {
    write_file("phaseq.cfg",
               "[potential]\nkind = poly\ncoeffs = 0,0,0,0,0.25\n"
               "[output]\njson = phaseq.json\n");
    CHECK(run("phase -c phaseq.cfg") == 0);
    std::ifstream is("phaseq.json");
    nlohmann::json j;
    is >> j;
    const double b = std::pow(16.0 / 3.0, 0.25);
    CHECK(std::abs(j["e"].get<double>() - b) < 1e-9);
    CHECK(std::abs(j["e_tilde"].get<double>() + b) < 1e-9);
    std::remove("phaseq.cfg");
    std::remove("phaseq.json");
}

TEST_CASE("tw law table: 101 monotone rows") {
    write_file("law.cfg",
               "[law]\nlaw = tw\ngrid_lo = -6\ngrid_hi = 4\ngrid_step = 0.1\n"
               "[output]\ncsv = law_tw.csv\n");
    CHECK(run("law -c law.cfg") == 0);
    const auto rows = read_csv("law_tw.csv");
    CHECK(rows.size() == 101);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].second >= rows[i - 1].second);
    std::remove("law.cfg");
    std::remove("law_tw.csv");
}

TEST_CASE("gk with one zero spike reproduces the normal law") {
    write_file("gk.cfg",
               "[law]\nlaw = gk\nalphas = 0\ngrid_lo = -3\ngrid_hi = 3\ngrid_step = 0.25\n"
               "[output]\ncsv = law_gk.csv\n");
    write_file("normal.cfg",
               "[law]\nlaw = normal\ngrid_lo = -3\ngrid_hi = 3\ngrid_step = 0.25\n"
               "[output]\ncsv = law_normal.csv\n");
    CHECK(run("law -c gk.cfg") == 0);
    CHECK(run("law -c normal.cfg") == 0);
    const auto g = read_csv("law_gk.csv");
    const auto n = read_csv("law_normal.csv");
    REQUIRE(g.size() == n.size());
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(g[i].second - n[i].second) < 1e-8);
    std::remove("gk.cfg");
    std::remove("normal.cfg");
    std::remove("law_gk.csv");
    std::remove("law_normal.csv");
}

TEST_CASE("fk with a single alpha matches the f1 column") {
    write_file("fk.cfg",
               "[law]\nlaw = fk\nalphas = 0.3\ngrid_lo = -3\ngrid_hi = 1\ngrid_step = 0.5\n"
               "[output]\ncsv = law_fk.csv\n");
    write_file("f1.cfg",
               "[law]\nlaw = f1\nalpha = 0.3\ngrid_lo = -3\ngrid_hi = 1\ngrid_step = 0.5\n"
               "[output]\ncsv = law_f1.csv\n");
    CHECK(run("law -c fk.cfg") == 0);
    CHECK(run("law -c f1.cfg") == 0);
    const auto a = read_csv("law_fk.csv");
    const auto b = read_csv("law_f1.csv");
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i].second - b[i].second) < 1e-7);
    std::remove("fk.cfg");
    std::remove("f1.cfg");
    std::remove("law_fk.csv");
    std::remove("law_f1.csv");
}

TEST_CASE("verify subcommand passes the default route suite") {
    std::string out;
    CHECK(run("verify", &out) == 0);
    CHECK(out.find("FAIL") == std::string::npos);
    CHECK(out.find("all routes agree") != std::string::npos);
}

TEST_CASE("sampling is bit-reproducible under a fixed seed") {
    write_file("sample.cfg",
               "[potential]\nkind = gaussian\n[model]\nn = 12\nspikes = 0.9\n"
               "[run]\ntrials = 30\nseed = 77\n[output]\nsamples = s1.rmts\n");
    CHECK(run("sample -c sample.cfg") == 0);
    write_file("sample2.cfg",
               "[potential]\nkind = gaussian\n[model]\nn = 12\nspikes = 0.9\n"
               "[run]\ntrials = 30\nseed = 77\n[output]\nsamples = s2.rmts\n");
    CHECK(run("sample -c sample2.cfg") == 0);
    std::ifstream f1("s1.rmts", std::ios::binary), f2("s2.rmts", std::ios::binary);
    std::stringstream b1, b2;
    b1 << f1.rdbuf();
    b2 << f2.rdbuf();
    CHECK(b1.str() == b2.str());
    std::remove("sample.cfg");
    std::remove("sample2.cfg");
    std::remove("s1.rmts");
    std::remove("s2.rmts");
}

TEST_CASE("compare smoke test on a small subcritical run") {
    write_file("cmp.cfg",
               "[potential]\nkind = gaussian\n[model]\nn = 80\nspikes = 0.5\n"
               "regime = subcritical\n[run]\ntrials = 300\nseed = 5\n"
               "[output]\njson = cmp.json\n");
    std::string out;
    CHECK(run("compare -c cmp.cfg", &out) == 0);
    CHECK(out.find("KS") != std::string::npos);
    std::remove("cmp.cfg");
    std::remove("cmp.json");
}

TEST_CASE("confluent spikes are a validation error") {
    write_file("conf.cfg",
               "[potential]\nkind = gaussian\n[model]\nn = 10\nspikes = 0.5,0.5\n"
               "[run]\ntrials = 5\nseed = 1\n");
    CHECK(run("sample -c conf.cfg") == 2);
    std::remove("conf.cfg");
}
