#include "levysup/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "levysup/rng.hpp"

namespace levysup::mc {

namespace {

double binom_stderr(double p, std::uint64_t n) {
    return std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(n));
}

// Runs fn(path_index) over all paths, partitioned into contiguous worker
// blocks. fn must depend on the path index only through its PathRng, so
// the partition does not affect the result.
template <class PerPath>
std::uint64_t count_paths(const SimConfig& cfg, const PerPath& fn) {
    const unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(cfg.workers, cfg.n_paths));
    std::vector<std::uint64_t> counts(workers, 0);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = (cfg.n_paths + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t lo = w * chunk;
        const std::uint64_t hi = std::min(cfg.n_paths, lo + chunk);
        pool.emplace_back([&, w, lo, hi] {
            std::uint64_t c = 0;
            for (std::uint64_t i = lo; i < hi; ++i)
                if (fn(i)) ++c;
            counts[w] = c;
        });
    }
    for (auto& t : pool) t.join();
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    return total;
}

McEstimate grid_max_estimate(const models::LevyModel& m, double level,
                             double T, const SimConfig& cfg, bool negate) {
    const double dt = T / cfg.n_steps;
    const std::uint64_t hits = count_paths(cfg, [&](std::uint64_t i) {
        rng::PathRng prng(cfg.seed, i);
        double x = 0.0;
        double running_max = 0.0; // includes X(0) = 0
        for (std::uint32_t k = 0; k < cfg.n_steps; ++k) {
            double inc = models::sample_increment(m, dt, prng);
            x += negate ? -inc : inc;
            if (x > running_max) running_max = x;
        }
        return running_max > level;
    });
    const double p = static_cast<double>(hits) / cfg.n_paths;
    return {p, binom_stderr(p, cfg.n_paths), cfg.n_paths, BiasNote::BiasedLow};
}

} // namespace

void SimConfig::validate() const {
    if (n_paths < 1) throw std::invalid_argument("SimConfig: n_paths >= 1");
    if (n_steps < 1) throw std::invalid_argument("SimConfig: n_steps >= 1");
    if (workers < 1) throw std::invalid_argument("SimConfig: workers >= 1");
}

const char* bias_name(BiasNote b) {
    return b == BiasNote::BiasedLow ? "biased-low" : "unbiased";
}

McEstimate mc_sup_prob(const models::LevyModel& m, double u, double T,
                       const SimConfig& cfg) {
    cfg.validate();
    models::validate(m);
    if (!(T > 0)) throw std::invalid_argument("mc_sup_prob: T must be > 0");
    if (const auto* cp = std::get_if<models::CompoundPoissonDrift>(&m))
        return mc_sup_prob_exact_jumps(*cp, u, T, cfg);
    return grid_max_estimate(m, u, T, cfg, /*negate=*/false);
}

McEstimate mc_sup_prob_exact_jumps(const models::CompoundPoissonDrift& m,
                                   double u, double T, const SimConfig& cfg) {
    cfg.validate();
    models::validate(models::LevyModel{m});
    if (!(T > 0))
        throw std::invalid_argument("mc_sup_prob_exact_jumps: T must be > 0");

    const std::uint64_t hits = count_paths(cfg, [&](std::uint64_t i) {
        rng::PathRng prng(cfg.seed, i);
        if (u < 0.0) return true; // X(0) = 0 already exceeds
        const std::uint64_t n = prng.poisson(m.lambda * T);
        if (n == 0) return false; // pure down-drift
        std::vector<double> times(n);
        for (auto& t : times) t = T * prng.uniform01();
        std::sort(times.begin(), times.end());
        double jump_sum = 0.0;
        for (std::uint64_t k = 0; k < n; ++k) {
            jump_sum += prng.exponential() / m.mu_rate;
            if (jump_sum - m.c * times[k] > u) return true;
        }
        return false;
    });
    const double p = static_cast<double>(hits) / cfg.n_paths;
    return {p, binom_stderr(p, cfg.n_paths), cfg.n_paths, BiasNote::Unbiased};
}

McEstimate mc_first_passage(const models::LevyModel& m, double z, double T,
                            const SimConfig& cfg) {
    cfg.validate();
    models::validate(m);
    if (!(T > 0))
        throw std::invalid_argument("mc_first_passage: T must be > 0");
    return grid_max_estimate(m, z, T, cfg,
                             models::negate_for_negative_view(m));
}

std::vector<McEstimate> mc_joint_inf_terminal(const models::LevyModel& m,
                                              double x,
                                              const std::vector<double>& z_edges,
                                              double T, const SimConfig& cfg) {
    cfg.validate();
    models::validate(m);
    if (!(T > 0) || !(x > 0))
        throw std::invalid_argument("mc_joint_inf_terminal: x, T must be > 0");
    if (z_edges.size() < 2)
        throw std::invalid_argument(
            "mc_joint_inf_terminal: need at least two bin edges");
    for (std::size_t j = 1; j < z_edges.size(); ++j)
        if (!(z_edges[j] > z_edges[j - 1]))
            throw std::invalid_argument(
                "mc_joint_inf_terminal: bin edges must be strictly increasing");

    const bool negate = models::negate_for_negative_view(m);
    const double dt = T / cfg.n_steps;
    const std::size_t n_bins = z_edges.size() - 1;

    const unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(cfg.workers, cfg.n_paths));
    std::vector<std::vector<std::uint64_t>> counts(
        workers, std::vector<std::uint64_t>(n_bins, 0));
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (cfg.n_paths + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t lo = w * chunk;
        const std::uint64_t hi = std::min(cfg.n_paths, lo + chunk);
        pool.emplace_back([&, w, lo, hi] {
            auto& local = counts[w];
            for (std::uint64_t i = lo; i < hi; ++i) {
                rng::PathRng prng(cfg.seed, i);
                double y = 0.0;
                double running_min = 0.0;
                for (std::uint32_t k = 0; k < cfg.n_steps; ++k) {
                    double inc = models::sample_increment(m, dt, prng);
                    y += negate ? -inc : inc;
                    if (y < running_min) running_min = y;
                }
                if (!(running_min < -x)) continue;
                const double wz = y + x;
                // bin j covers (e_j, e_{j+1}]
                auto it = std::lower_bound(z_edges.begin(), z_edges.end(), wz);
                if (it == z_edges.begin() || it == z_edges.end()) continue;
                ++local[static_cast<std::size_t>(it - z_edges.begin()) - 1];
            }
        });
    }
    for (auto& t : pool) t.join();

    std::vector<McEstimate> out(n_bins);
    for (std::size_t b = 0; b < n_bins; ++b) {
        std::uint64_t total = 0;
        for (unsigned w = 0; w < workers; ++w) total += counts[w][b];
        const double p = static_cast<double>(total) / cfg.n_paths;
        out[b] = {p, binom_stderr(p, cfg.n_paths), cfg.n_paths,
                  BiasNote::BiasedLow};
    }
    return out;
}

} // namespace levysup::mc
