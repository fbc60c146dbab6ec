#include "oufpt/mc_oracle.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include <boost/random/normal_distribution.hpp>

#include "oufpt/errors.hpp"
#include "oufpt/rng.hpp"

namespace oufpt {

void MCConfig::validate(const OUParams& p) const {
    p.validate();
    if (n_paths < 10'000) throw DomainError("mc: n_paths must be at least 10000");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("mc: dt must be positive");
    if (dt > p.theta / 100.0) throw DomainError("mc: dt must not exceed theta/100");
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw DomainError("mc: t_max must be positive");
    if (n_bins < 1) throw DomainError("mc: n_bins must be at least 1");
    if (block_size < 1) throw DomainError("mc: block_size must be at least 1");
}

double MCEstimate::absorbed_fraction() const {
    return n_paths == 0 ? 0.0 : static_cast<double>(n_absorbed) / static_cast<double>(n_paths);
}

unsigned default_thread_count() {
    if (const char* env = std::getenv("FPT_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

namespace {

struct BlockResult {
    std::vector<std::uint64_t> counts;
    std::uint64_t absorbed = 0;
    double time_sum = 0.0;
};

}  // namespace

MCEstimate simulate_fpt(const OUParams& p, const Threshold& th, double x0, const MCConfig& cfg) {
    cfg.validate(p);
    if (!std::isfinite(x0)) throw DomainError("mc: non-finite start");
    if (!(x0 < threshold_value(th, p, 0.0)))
        throw DomainError("mc: start must lie strictly below the threshold");

    const double dt = cfg.dt;
    const auto n_steps = static_cast<std::size_t>(std::ceil(cfg.t_max / dt - 1e-9));
    std::vector<double> level(n_steps + 1);
    for (std::size_t k = 0; k <= n_steps; ++k)
        level[k] = threshold_value(th, p, std::min(static_cast<double>(k) * dt, cfg.t_max));

    const double m = p.mean_level();
    const double decay = std::exp(-dt / p.theta);
    const double var = p.sigma2 * p.theta * -std::expm1(-2.0 * dt / p.theta) / 2.0;
    const double sd = std::sqrt(var);
    const double width = cfg.t_max / static_cast<double>(cfg.n_bins);
    const std::uint64_t n_blocks = (cfg.n_paths + cfg.block_size - 1) / cfg.block_size;

    auto run_block = [&](std::uint64_t b, Xoshiro256pp rng) {
        BlockResult out;
        out.counts.assign(cfg.n_bins, 0);
        boost::random::normal_distribution<double> normal(0.0, 1.0);
        const std::uint64_t first = b * cfg.block_size;
        const std::uint64_t last = std::min(cfg.n_paths, first + cfg.block_size);
        for (std::uint64_t path = first; path < last; ++path) {
            double xk = x0;
            for (std::size_t k = 0; k < n_steps; ++k) {
                const double xn = m + (xk - m) * decay + sd * normal(rng);
                const double u = rng.uniform();
                bool crossed = xn > level[k + 1];
                if (!crossed && cfg.bridge) {
                    const double sbar = 0.5 * (level[k] + level[k + 1]);
                    const double expo = 2.0 * (sbar - xk) * (sbar - xn) / var;
                    if (expo < 38.0) crossed = u < std::exp(-expo);
                }
                if (crossed) {
                    const double t = (static_cast<double>(k) + 0.5) * dt;
                    if (t < cfg.t_max) {
                        const auto bin = std::min(cfg.n_bins - 1, static_cast<std::size_t>(t / width));
                        ++out.counts[bin];
                        ++out.absorbed;
                        out.time_sum += t;
                    }
                    break;
                }
                xk = xn;
            }
        }
        return out;
    };

    // Substream start states, block b = b jumps from the seeded state.
    std::vector<Xoshiro256pp> streams;
    streams.reserve(n_blocks);
    Xoshiro256pp base(cfg.seed);
    for (std::uint64_t b = 0; b < n_blocks; ++b) {
        streams.push_back(base);
        base.jump();
    }

    std::vector<BlockResult> results(n_blocks);
    const unsigned n_threads = std::max(1u, std::min<unsigned>(
        cfg.threads ? cfg.threads : default_thread_count(), static_cast<unsigned>(n_blocks)));
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t b = next++; b < n_blocks; b = next++) results[b] = run_block(b, streams[b]);
    };
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    MCEstimate est;
    est.bin_edges.resize(cfg.n_bins + 1);
    for (std::size_t i = 0; i <= cfg.n_bins; ++i) est.bin_edges[i] = static_cast<double>(i) * width;
    est.bin_edges.back() = cfg.t_max;
    est.counts.assign(cfg.n_bins, 0);
    double time_sum = 0.0;
    for (const auto& r : results) {
        for (std::size_t i = 0; i < cfg.n_bins; ++i) est.counts[i] += r.counts[i];
        est.n_absorbed += r.absorbed;
        time_sum += r.time_sum;
    }
    est.n_paths = cfg.n_paths;
    est.density.resize(cfg.n_bins);
    for (std::size_t i = 0; i < cfg.n_bins; ++i)
        est.density[i] = static_cast<double>(est.counts[i]) /
                         (static_cast<double>(cfg.n_paths) * est.bin_width(i));
    est.mean_fpt = est.n_absorbed ? time_sum / static_cast<double>(est.n_absorbed) : 0.0;
    est.seed = cfg.seed;
    est.n_blocks = n_blocks;
    est.block_size = cfg.block_size;
    est.generator = "xoshiro256++/splitmix64-seeded/jump-2^128-per-block; boost normal_distribution";
    est.config = cfg;
    return est;
}

}  // namespace oufpt
