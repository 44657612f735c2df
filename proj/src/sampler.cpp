// SPDX-License-Identifier: Apache-2.0
#include "rmt/sampler.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <thread>

#include "rmt/errors.hpp"

namespace rmt {

namespace {

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial & 0xffffffffu),
                      static_cast<std::uint32_t>(trial >> 32)};
    return std::mt19937_64(seq);
}

void run_parallel(std::uint64_t count, const std::function<void(std::uint64_t)>& work) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned nthreads = static_cast<unsigned>(std::min<std::uint64_t>(hw, count));
    if (nthreads <= 1) {
        for (std::uint64_t t = 0; t < count; ++t) work(t);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < nthreads; ++w) {
        pool.emplace_back([&, w] {
            for (std::uint64_t t = w; t < count; t += nthreads) work(t);
        });
    }
    for (auto& th : pool) th.join();
}

// Stabilized spike block: rows k < m are e^{n a_k (lambda_j - ref_k)}, the
// rest are the confluent monomial rows lambda_j^i (zero external source
// eigenvalues).  Column j belongs to lambda_j.
struct SpikeBlock {
    int d, m, n;
    std::vector<double> a;
    std::vector<double> ref;  // per-row exponent shifts, fixed per chain

    Eigen::VectorXd column(double lambda) const {
        Eigen::VectorXd c(d);
        for (int k = 0; k < m; ++k) c(k) = std::exp(n * a[k] * (lambda - ref[k]));
        double pw = 1.0;
        for (int i = 0; i < d - m; ++i) {
            c(m + i) = pw;
            pw *= lambda;
        }
        return c;
    }

    Eigen::MatrixXd matrix(const std::vector<double>& lam) const {
        Eigen::MatrixXd N(d, d);
        for (int j = 0; j < d; ++j) N.col(j) = column(lam[j]);
        return N;
    }
};

double log_vandermonde(const std::vector<double>& lam) {
    double s = 0.0;
    for (std::size_t i = 0; i < lam.size(); ++i)
        for (std::size_t j = i + 1; j < lam.size(); ++j)
            s += std::log(std::abs(lam[i] - lam[j]));
    return s;
}

// split-Rhat of a scalar across chains
double split_rhat(const std::vector<std::vector<double>>& chains) {
    std::vector<std::vector<double>> halves;
    for (const auto& c : chains) {
        const std::size_t h = c.size() / 2;
        if (h < 2) return 1e9;
        halves.emplace_back(c.begin(), c.begin() + h);
        halves.emplace_back(c.begin() + h, c.begin() + 2 * h);
    }
    const double m = static_cast<double>(halves.size());
    const double len = static_cast<double>(halves[0].size());
    std::vector<double> means;
    double grand = 0.0, W = 0.0;
    for (const auto& h : halves) {
        double mu = 0.0;
        for (double v : h) mu += v;
        mu /= len;
        means.push_back(mu);
        grand += mu / m;
        double s2 = 0.0;
        for (double v : h) s2 += (v - mu) * (v - mu);
        W += s2 / (len - 1.0) / m;
    }
    double B = 0.0;
    for (double mu : means) B += (mu - grand) * (mu - grand);
    B *= len / (m - 1.0);
    if (W <= 0.0) return 1e9;
    const double var_plus = (len - 1.0) / len * W + B / len;
    return std::sqrt(var_plus / W);
}

}  // namespace

SampleBatch sample_gaussian_spiked(int n, const std::vector<double>& a_list, std::uint64_t trials,
                                   std::uint64_t seed) {
    if (n < 1 || n > 2000) throw DomainError("sample_gaussian_spiked: need 1 <= n <= 2000");
    if (trials < 1 || trials > 1000000)
        throw DomainError("sample_gaussian_spiked: trials out of range");
    if (static_cast<int>(a_list.size()) > n)
        throw DomainError("sample_gaussian_spiked: more spikes than dimensions");

    SampleBatch batch;
    batch.n = n;
    batch.spikes = a_list;
    batch.trials = trials;
    batch.seed = seed;
    batch.method = "exact";
    batch.eigenvalues.resize(trials * static_cast<std::uint64_t>(n));

    const double diag_sd = 1.0 / std::sqrt(static_cast<double>(n));
    const double off_sd = 1.0 / std::sqrt(2.0 * static_cast<double>(n));

    run_parallel(trials, [&](std::uint64_t t) {
        std::mt19937_64 rng = trial_rng(seed, t);
        std::normal_distribution<double> gauss(0.0, 1.0);
        Eigen::MatrixXcd H(n, n);
        for (int i = 0; i < n; ++i) {
            H(i, i) = gauss(rng) * diag_sd + (i < static_cast<int>(a_list.size()) ? a_list[i] : 0.0);
            for (int j = i + 1; j < n; ++j) {
                const std::complex<double> z(gauss(rng) * off_sd, gauss(rng) * off_sd);
                H(i, j) = z;
                H(j, i) = std::conj(z);
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
        double* out = batch.eigenvalues.data() + t * static_cast<std::uint64_t>(n);
        for (int i = 0; i < n; ++i) out[i] = es.eigenvalues()(n - 1 - i);
    });
    return batch;
}

SampleBatch sample_general_mcmc(const Potential& pot, int n, const std::vector<double>& a_list,
                                std::uint64_t trials, std::uint64_t steps, std::uint64_t seed) {
    if (n < 1 || n > 60) throw DomainError("sample_general_mcmc: need 1 <= n <= 60");
    const int m = static_cast<int>(a_list.size());
    if (m > n) throw DomainError("sample_general_mcmc: more spikes than dimensions");
    constexpr int kChains = 4;
    const std::uint64_t burn = steps / 3;
    const std::uint64_t keep = steps - burn;
    const std::uint64_t per_chain = (trials + kChains - 1) / kChains;
    if (steps == 0 || keep < per_chain || per_chain < 4)
        throw NonConvergence("mcmc: not enough steps for the requested trials");
    const std::uint64_t thin = keep / per_chain;

    SampleBatch batch;
    batch.n = n;
    batch.spikes = a_list;
    batch.seed = seed;
    batch.method = "mcmc";
    batch.thin = static_cast<std::uint32_t>(thin);

    std::vector<std::vector<std::vector<double>>> samples(kChains);  // chain -> sample -> eigs
    std::vector<std::vector<double>> tops(kChains);

    // coarse argmin of V for the initial spread
    double x_center = 0.0, v_best = pot.V(0.0);
    for (double x = -20.0; x <= 20.0; x += 0.05)
        if (pot.V(x) < v_best) {
            v_best = pot.V(x);
            x_center = x;
        }

    run_parallel(kChains, [&](std::uint64_t chain) {
        std::mt19937_64 rng = trial_rng(seed, 0x4d430000ull + chain);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::uniform_real_distribution<double> unif(0.0, 1.0);

        // rough equally-spaced start around the potential minimum
        std::vector<double> lam(n);
        for (int i = 0; i < n; ++i)
            lam[i] = x_center - 1.5 + 3.0 * (i + 0.5) / n + 0.01 * gauss(rng);

        SpikeBlock blk{n, m, n, a_list, std::vector<double>(m, 0.0)};
        for (int k = 0; k < m; ++k) blk.ref[k] = *std::max_element(lam.begin(), lam.end());

        Eigen::PartialPivLU<Eigen::MatrixXd> lu;
        Eigen::MatrixXd Ninv;
        auto refresh = [&] {
            lu.compute(blk.matrix(lam));
            Ninv = lu.inverse();
        };
        refresh();

        double sigma = 0.2;
        std::uint64_t accepted = 0, proposed = 0;

        for (std::uint64_t sweep = 0; sweep < steps; ++sweep) {
            for (int i = 0; i < n; ++i) {
                const double old = lam[i];
                const double prop = old + sigma * gauss(rng);
                // log-ratio: potential + Vandermonde + spike determinant
                double logr = -n * (pot.V(prop) - pot.V(old));
                bool clash = false;
                for (int j = 0; j < n; ++j) {
                    if (j == i) continue;
                    const double dn = std::abs(prop - lam[j]);
                    const double dd = std::abs(old - lam[j]);
                    if (dn == 0.0) {
                        clash = true;
                        break;
                    }
                    logr += std::log(dn) - std::log(dd);
                }
                ++proposed;
                if (clash) continue;
                const Eigen::VectorXd cnew = blk.column(prop);
                const double r = Ninv.row(i) * cnew;  // det ratio
                if (r == 0.0 || !std::isfinite(r)) continue;
                logr += std::log(std::abs(r));
                if (logr >= 0.0 || unif(rng) < std::exp(logr)) {
                    // Sherman-Morrison column-replacement update of the inverse
                    const Eigen::VectorXd diff = cnew - blk.column(old);
                    const Eigen::VectorXd u = Ninv * diff;
                    Ninv -= (u / r) * Ninv.row(i).eval();
                    lam[i] = prop;
                    ++accepted;
                }
            }
            refresh();  // cap inverse drift once per sweep

            if (sweep < burn && sweep % 50 == 49) {
                const double rate = static_cast<double>(accepted) / proposed;
                if (rate > 0.4) sigma *= 1.25;
                if (rate < 0.25) sigma /= 1.25;
                accepted = proposed = 0;
            }
            if (sweep >= burn && (sweep - burn) % thin == thin - 1 &&
                samples[chain].size() < per_chain) {
                std::vector<double> sorted = lam;
                std::sort(sorted.rbegin(), sorted.rend());
                tops[chain].push_back(sorted[0]);
                samples[chain].push_back(std::move(sorted));
            }
        }
    });

    if (split_rhat(tops) > 1.1)
        throw NonConvergence("mcmc: split-Rhat of the top eigenvalue above 1.1");

    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto& chain = samples[t % kChains];
        const auto& s = chain[(t / kChains) % chain.size()];
        batch.eigenvalues.insert(batch.eigenvalues.end(), s.begin(), s.end());
        ++batch.trials;
    }
    return batch;
}

RescaledStatistic rescale_edge(const SampleBatch& batch, int k, double e, double beta) {
    if (k < 1 || k > batch.n) throw DomainError("rescale_edge: k out of 1..n");
    if (!(beta > 0.0)) throw BadScale("rescale_edge: beta must be positive");
    RescaledStatistic rs;
    rs.k = k;
    rs.centering = "edge";
    const double scale = beta * std::pow(static_cast<double>(batch.n), 2.0 / 3.0);
    rs.values.reserve(batch.trials);
    for (std::uint64_t t = 0; t < batch.trials; ++t)
        rs.values.push_back((batch.eig(t, k - 1) - e) * scale);
    return rs;
}

RescaledStatistic rescale_outlier(const SampleBatch& batch, int k, double x_star,
                                  double g_second) {
    if (k < 1 || k > batch.n) throw DomainError("rescale_outlier: k out of 1..n");
    if (!(g_second < 0.0)) throw BadScale("rescale_outlier: need G'' < 0");
    RescaledStatistic rs;
    rs.k = k;
    rs.centering = "outlier";
    const double scale = std::sqrt(-g_second * static_cast<double>(batch.n));
    rs.values.reserve(batch.trials);
    for (std::uint64_t t = 0; t < batch.trials; ++t)
        rs.values.push_back((batch.eig(t, k - 1) - x_star) * scale);
    return rs;
}

double ks_distance(const std::vector<double>& sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw DomainError("ks_distance: empty sample");
    std::vector<double> sorted = sample;
    std::sort(sorted.begin(), sorted.end());
    const double nn = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double F = cdf(sorted[i]);
        d = std::max(d, std::max(F - i / nn, (i + 1) / nn - F));
    }
    return d;
}

void SampleBatch::save(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("SampleBatch::save: cannot open " + path);
    const char magic[4] = {'R', 'M', 'T', 'S'};
    os.write(magic, 4);
    auto put_u32 = [&](std::uint32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); };
    auto put_u64 = [&](std::uint64_t v) { os.write(reinterpret_cast<const char*>(&v), 8); };
    put_u32(1);  // version
    put_u32(static_cast<std::uint32_t>(n));
    put_u32(static_cast<std::uint32_t>(spikes.size()));
    put_u32(thin);
    for (double a : spikes) os.write(reinterpret_cast<const char*>(&a), 8);
    put_u64(seed);
    put_u64(trials);
    const std::uint8_t tag = method == "exact" ? 0 : 1;
    os.write(reinterpret_cast<const char*>(&tag), 1);
    os.write(reinterpret_cast<const char*>(eigenvalues.data()),
             static_cast<std::streamsize>(eigenvalues.size() * 8));
}

SampleBatch SampleBatch::load(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("SampleBatch::load: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (std::memcmp(magic, "RMTS", 4) != 0) throw Error("SampleBatch::load: bad magic");
    auto get_u32 = [&] {
        std::uint32_t v;
        is.read(reinterpret_cast<char*>(&v), 4);
        return v;
    };
    auto get_u64 = [&] {
        std::uint64_t v;
        is.read(reinterpret_cast<char*>(&v), 8);
        return v;
    };
    SampleBatch b;
    if (get_u32() != 1) throw Error("SampleBatch::load: unsupported version");
    b.n = static_cast<int>(get_u32());
    const std::uint32_t m = get_u32();
    b.thin = get_u32();
    b.spikes.resize(m);
    for (auto& a : b.spikes) is.read(reinterpret_cast<char*>(&a), 8);
    b.seed = get_u64();
    b.trials = get_u64();
    std::uint8_t tag;
    is.read(reinterpret_cast<char*>(&tag), 1);
    b.method = tag == 0 ? "exact" : "mcmc";
    b.eigenvalues.resize(b.trials * static_cast<std::uint64_t>(b.n));
    is.read(reinterpret_cast<char*>(b.eigenvalues.data()),
            static_cast<std::streamsize>(b.eigenvalues.size() * 8));
    if (!is) throw Error("SampleBatch::load: truncated file");
    return b;
}

void SampleBatch::write_csv(std::ostream& os) const {
    os << std::setprecision(17);
    for (std::uint64_t t = 0; t < trials; ++t) {
        for (int i = 0; i < n; ++i) os << (i ? "," : "") << eig(t, i);
        os << "\n";
    }
}

}  // namespace rmt
