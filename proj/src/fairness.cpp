#include "gamblekit/fairness.hpp"

#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "gamblekit/analysis.hpp"
#include "gamblekit/game.hpp"
#include "gamblekit/numeric.hpp"
#include "gamblekit/parallel.hpp"

namespace gamblekit {

namespace {

constexpr int kMaxBisections = 200;

struct Sample {
    double x;
    double g;
    int k0;
};

using Objective = std::function<Sample(double)>;

// Bisects [lo, hi] (g(lo) < 0 < g(hi)) down to width tol.
FairSolution bisect(const Objective& objective, Sample lo, Sample hi, double tol) {
    for (int i = 0; i < kMaxBisections && hi.x - lo.x > tol; ++i) {
        const Sample mid = objective(0.5 * (lo.x + hi.x));
        if (mid.g == 0.0) {
            return {mid.x, mid.x, 0.0, 0.0, FairStatus::Crossing};
        }
        (mid.g < 0.0 ? lo : hi) = mid;
    }
    // G is continuous on a k0 plateau; a differing k0 means the sign change
    // happens at the discontinuity.
    const FairStatus status = lo.k0 == hi.k0 ? FairStatus::Crossing : FairStatus::JumpAcrossZero;
    return {lo.x, hi.x, lo.g, hi.g, status};
}

FairSolution solve_on_grid(const Objective& objective, const std::vector<Sample>& grid, double tol) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i].g == 0.0) {
            return {grid[i].x, grid[i].x, 0.0, 0.0, FairStatus::Crossing};
        }
        if (i + 1 < grid.size() && grid[i].g < 0.0 && grid[i + 1].g > 0.0) {
            return bisect(objective, grid[i], grid[i + 1], tol);
        }
        if (i + 1 < grid.size() && grid[i].g > 0.0 && grid[i + 1].g < 0.0) {
            // Mirror so the bisection sees an increasing function.
            const Objective flipped = [&objective](double x) {
                Sample s = objective(x);
                s.g = -s.g;
                return s;
            };
            Sample lo = grid[i], hi = grid[i + 1];
            lo.g = -lo.g;
            hi.g = -hi.g;
            FairSolution sol = bisect(flipped, lo, hi, tol);
            sol.g_lo = -sol.g_lo;
            sol.g_hi = -sol.g_hi;
            return sol;
        }
    }
    return {grid.front().x, grid.back().x, grid.front().g, grid.back().g, FairStatus::NoSignChange};
}

void check_tol(double tol) {
    if (!(tol > 0.0)) {
        throw DomainError("solver tolerance must be positive");
    }
}

// G(u) at fixed (n, d, p). The win probability depends on u only through
// k0, so both tails are tabulated once per k0.
class UpFactorObjective {
public:
    UpFactorObjective(int n, double d, double p) : n_(n), d_(d), log_d_(std::log(static_cast<long double>(d))) {
        const LogBinomialTable table(n);
        const long double lp = std::log(static_cast<long double>(p));
        const long double lq = std::log(static_cast<long double>(1.0 - p));
        log_pmf_.resize(static_cast<std::size_t>(n) + 1);
        for (int k = 0; k <= n; ++k) {
            log_pmf_[static_cast<std::size_t>(k)] = table(k) + k * lp + (n - k) * lq;
        }
        // lower_[k] = P(X < k), upper_[k] = P(X >= k), summed from the small end.
        lower_.assign(static_cast<std::size_t>(n) + 2, 0.0L);
        upper_.assign(static_cast<std::size_t>(n) + 2, 0.0L);
        ExtendedSum acc;
        for (int k = 0; k <= n; ++k) {
            acc.add(std::exp(log_pmf_[static_cast<std::size_t>(k)]));
            lower_[static_cast<std::size_t>(k) + 1] = acc.value();
        }
        ExtendedSum rev;
        for (int k = n; k >= 0; --k) {
            rev.add(std::exp(log_pmf_[static_cast<std::size_t>(k)]));
            upper_[static_cast<std::size_t>(k)] = rev.value();
        }
        logs_.reserve(static_cast<std::size_t>(n) + 1);
    }

    Sample operator()(double u) const {
        const int k0 = threshold_index(n_, u, d_).k0;
        const long double log_u = std::log(static_cast<long double>(u));
        logs_.clear();
        for (int k = 0; k <= k0; ++k) {
            logs_.push_back(log_pmf_[static_cast<std::size_t>(k)] + k * log_u + (n_ - k) * log_d_);
        }
        const double a = sum_exp_largest_first(std::span<const long double>(logs_)).value();
        const long double win = upper_[static_cast<std::size_t>(k0) + 1];
        const long double loss = lower_[static_cast<std::size_t>(k0) + 1];
        CompensatedSum g;
        g.add(-1.0);
        g.add(a);
        g.add(static_cast<double>(2.0L * win / (win + loss)));
        return Sample{u, g.value(), k0};
    }

private:
    int n_;
    double d_;
    long double log_d_;
    std::vector<long double> log_pmf_;
    std::vector<long double> lower_;
    std::vector<long double> upper_;
    mutable std::vector<long double> logs_;
};

}  // namespace

std::string_view to_string(FairStatus s) noexcept {
    switch (s) {
        case FairStatus::Crossing:
            return "crossing";
        case FairStatus::JumpAcrossZero:
            return "jump-across-zero";
        case FairStatus::NoSignChange:
            return "no-sign-change";
    }
    return "no-sign-change";
}

FairSolution fair_u_for_d(int n, double d, double p, double tol, double u_max) {
    if (n < 1) {
        throw DomainError("number of rounds n must be at least 1");
    }
    if (!(d > 0.0 && d < 1.0)) {
        throw DomainError("fair_u_for_d requires 0 < d < 1");
    }
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("fair_u_for_d requires 0 < p < 1");
    }
    if (!(u_max > 1.0) || !std::isfinite(u_max)) {
        throw DomainError("u_max must be finite and greater than 1");
    }
    check_tol(tol);

    const UpFactorObjective eval(n, d, p);
    const Objective objective = [&eval](double u) { return eval(u); };

    const int base_points = 4 * n + 1;
    std::vector<Sample> grid;
    grid.reserve(static_cast<std::size_t>(base_points));
    for (int i = 0; i < base_points; ++i) {
        grid.push_back(objective(1.0 + (u_max - 1.0) * i / (base_points - 1)));
    }
    // Split intervals until k0 moves by at most one between neighbours.
    std::vector<Sample> refined;
    refined.reserve(grid.size() * 2);
    std::function<void(const Sample&, const Sample&, int)> refine = [&](const Sample& a, const Sample& b, int depth) {
        if (std::abs(a.k0 - b.k0) <= 1 || depth > 60 || b.x - a.x <= tol) {
            refined.push_back(b);
            return;
        }
        const Sample mid = objective(0.5 * (a.x + b.x));
        refine(a, mid, depth + 1);
        refine(mid, b, depth + 1);
    };
    refined.push_back(grid.front());
    for (std::size_t i = 1; i < grid.size(); ++i) {
        refine(grid[i - 1], grid[i], 0);
    }
    return solve_on_grid(objective, refined, tol);
}

FairSolution fair_p(int n, double u, double d, double tol) {
    check_tol(tol);
    GameParams base;
    base.n = n;
    base.u = u;
    base.d = d;
    base.p = 0.5;
    validate_for_analysis(base);

    const LogBinomialTable table(n);
    const Objective objective = [&](double p) {
        GameParams params = base;
        params.p = p;
        const ProfitAnalysis pa = expected_net_profit(params, table);
        return Sample{p, pa.g, pa.threshold.k0};
    };
    const int points = 4 * n + 1;
    std::vector<Sample> grid;
    grid.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        grid.push_back(objective(static_cast<double>(i) / (points - 1)));
    }
    return solve_on_grid(objective, grid, tol);
}

std::vector<FairCurvePoint> fair_curve(int n, double p, std::span<const double> d_grid, double tol, double u_max,
                                       unsigned workers) {
    for (double d : d_grid) {
        if (!(d > 0.0 && d < 1.0)) {
            throw DomainError("fair_curve requires every d in (0, 1)");
        }
    }
    std::vector<FairCurvePoint> out(d_grid.size());
    parallel_for(d_grid.size(), workers == 0 ? worker_count() : workers, [&](std::size_t i) {
        out[i] = {d_grid[i], fair_u_for_d(n, d_grid[i], p, tol, u_max)};
    });
    return out;
}

}  // namespace gamblekit
