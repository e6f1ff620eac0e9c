#pragma once

#include <cstdint>
#include <vector>

#include "gamblekit/game.hpp"

namespace gamblekit {

/// One played game: per-round scores and the resulting net profit.
struct Trajectory {
    std::uint64_t seed = 0;
    std::vector<double> scores;        ///< length n+1, scores[0] = initial score
    std::vector<std::uint8_t> tosses;  ///< length n, 1 = heads
    int heads_count = 0;
    double net_profit = 0.0;

    friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

/// Plays n rounds with Bernoulli(p) tosses drawn from PhiloxStream(seed).
/// Identical (params, seed) give bit-identical trajectories.
Trajectory simulate_trajectory(const GameParams& params, std::uint64_t seed);

/// Heads count of simulate_trajectory(params, seed) without storing the path.
int simulate_heads(const GameParams& params, std::uint64_t seed);

struct BatchStats {
    long long num_runs = 0;
    double mean_profit = 0.0;
    double sample_variance = 0.0;  ///< unbiased; 0 for a single run
    long long win_count = 0;
    std::vector<double> profit_samples;  ///< in run order, when retained

    friend bool operator==(const BatchStats&, const BatchStats&) = default;
};

struct BatchOptions {
    bool retain_samples = false;
    unsigned workers = 0;  ///< 0 = worker_count()
};

/// Runs num_runs games; run i uses seed derive_seed(seed, i). Aggregation
/// walks the runs in index order, so results do not depend on `workers`.
BatchStats simulate_batch(const GameParams& params, long long num_runs, std::uint64_t seed,
                          const BatchOptions& options = {});

}  // namespace gamblekit
