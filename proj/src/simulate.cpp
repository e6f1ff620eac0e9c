#include "gamblekit/simulate.hpp"

#include <algorithm>

#include "gamblekit/numeric.hpp"
#include "gamblekit/parallel.hpp"
#include "gamblekit/rng.hpp"

namespace gamblekit {

namespace {

constexpr std::size_t kRunsPerTask = 4096;

}  // namespace

Trajectory simulate_trajectory(const GameParams& params, std::uint64_t seed) {
    validate_for_simulation(params);
    Trajectory t;
    t.seed = seed;
    t.scores.reserve(static_cast<std::size_t>(params.n) + 1);
    t.tosses.reserve(static_cast<std::size_t>(params.n));
    t.scores.push_back(params.initial_score);
    PhiloxStream stream(seed);
    double score = params.initial_score;
    for (int round = 0; round < params.n; ++round) {
        const bool heads = stream.bernoulli(params.p);
        score *= heads ? params.u : params.d;
        t.tosses.push_back(heads ? 1 : 0);
        t.scores.push_back(score);
        t.heads_count += heads ? 1 : 0;
    }
    t.net_profit = net_profit_given_heads(params, t.heads_count);
    return t;
}

int simulate_heads(const GameParams& params, std::uint64_t seed) {
    validate_for_simulation(params);
    PhiloxStream stream(seed);
    int heads = 0;
    for (int round = 0; round < params.n; ++round) {
        heads += stream.bernoulli(params.p) ? 1 : 0;
    }
    return heads;
}

BatchStats simulate_batch(const GameParams& params, long long num_runs, std::uint64_t seed,
                          const BatchOptions& options) {
    validate_for_simulation(params);
    if (num_runs < 1) {
        throw DomainError("simulate_batch requires num_runs >= 1");
    }
    const WinRange wins = win_range(params.n, params.u, params.d);
    std::vector<double> profit_by_heads(static_cast<std::size_t>(params.n) + 1);
    for (int k = 0; k <= params.n; ++k) {
        profit_by_heads[static_cast<std::size_t>(k)] = net_profit_given_heads(params, wins, k);
    }

    const auto runs = static_cast<std::size_t>(num_runs);
    std::vector<int> heads(runs);
    const std::size_t tasks = (runs + kRunsPerTask - 1) / kRunsPerTask;
    parallel_for(tasks, options.workers == 0 ? worker_count() : options.workers, [&](std::size_t task) {
        const std::size_t end = std::min(runs, (task + 1) * kRunsPerTask);
        for (std::size_t i = task * kRunsPerTask; i < end; ++i) {
            heads[i] = simulate_heads(params, derive_seed(seed, i));
        }
    });

    BatchStats out;
    out.num_runs = num_runs;
    CompensatedSum total;
    for (int h : heads) {
        total.add(profit_by_heads[static_cast<std::size_t>(h)]);
        out.win_count += wins.contains(h) ? 1 : 0;
    }
    out.mean_profit = total.value() / static_cast<double>(num_runs);
    if (num_runs > 1) {
        CompensatedSum squares;
        for (int h : heads) {
            const double dev = profit_by_heads[static_cast<std::size_t>(h)] - out.mean_profit;
            squares.add(dev * dev);
        }
        out.sample_variance = squares.value() / static_cast<double>(num_runs - 1);
    }
    if (options.retain_samples) {
        out.profit_samples.reserve(runs);
        for (int h : heads) {
            out.profit_samples.push_back(profit_by_heads[static_cast<std::size_t>(h)]);
        }
    }
    return out;
}

}  // namespace gamblekit
