#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oufpt/process.hpp"

namespace oufpt {

struct MCConfig {
    std::uint64_t n_paths = 1'000'000;
    double dt = 1e-3;
    double t_max = 5.0;
    std::uint64_t seed = 0;
    std::size_t n_bins = 100;
    bool bridge = true;
    std::uint64_t block_size = 4096;  // paths per substream
    unsigned threads = 0;             // 0: FPT_THREADS or hardware concurrency

    // Throws DomainError unless n_paths >= 10^4, 0 < dt <= theta/100,
    // t_max > 0, n_bins >= 1 and block_size >= 1.
    void validate(const OUParams& p) const;
};

// Binned first-passage times. Bin edges are uniform on [0, t_max]; paths
// still below the threshold at t_max are counted as survivors.
struct MCEstimate {
    std::vector<double> bin_edges;
    std::vector<std::uint64_t> counts;
    std::vector<double> density;  // counts / (n_paths * width)
    std::uint64_t n_paths = 0;
    std::uint64_t n_absorbed = 0;
    double mean_fpt = 0.0;  // over absorbed paths
    std::uint64_t seed = 0;
    std::uint64_t n_blocks = 0;
    std::uint64_t block_size = 0;
    std::string generator;  // identity of the substream construction
    MCConfig config;

    double bin_width(std::size_t i) const { return bin_edges[i + 1] - bin_edges[i]; }
    double absorbed_fraction() const;
};

/// Exact-transition simulation of OU first passage through S(t).
/// Paths are split into blocks of cfg.block_size; block b draws from the
/// xoshiro256++ stream seeded by SplitMix64(seed) and advanced by b jumps of
/// 2^128, so results do not depend on the thread count.
/// With cfg.bridge, a path that stays below the threshold at both ends of a
/// step is still absorbed with the frozen-coefficient bridge probability
/// exp(-2 (Sbar - X_k)(Sbar - X_{k+1}) / v), v the one-step conditional
/// variance and Sbar the mean threshold over the step. A uniform is drawn
/// every step whether or not the bridge is enabled, so bridge on/off runs
/// with the same seed share their Gaussian increments.
/// A crossing in (t_k, t_{k+1}] is recorded at t_k + dt/2.
MCEstimate simulate_fpt(const OUParams& p, const Threshold& th, double x0, const MCConfig& cfg);

/// Thread count from FPT_THREADS when set to a positive integer, else the
/// hardware concurrency (at least 1).
unsigned default_thread_count();

}  // namespace oufpt
