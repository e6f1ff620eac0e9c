#include "gamblekit/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gamblekit/analysis.hpp"
#include "gamblekit/game.hpp"
#include "gamblekit/numeric.hpp"

namespace gamblekit {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// x ln x with 0 ln 0 = 0
double xlogx(double x) {
    return x == 0.0 ? 0.0 : x * std::log(x);
}

}  // namespace

std::string_view to_string(Regime r) noexcept {
    switch (r) {
        case Regime::Loss:
            return "loss";
        case Regime::Fair:
            return "fair";
        case Regime::Profit:
            return "profit";
    }
    return "loss";
}

std::string_view to_string(LimitDistribution l) noexcept {
    switch (l) {
        case LimitDistribution::PointMassMinusOne:
            return "point-mass(-1)";
        case LimitDistribution::PointMassPlusOne:
            return "point-mass(+1)";
        case LimitDistribution::TwoPoint:
            return "two-point(+-1)";
    }
    return "point-mass(-1)";
}

std::string_view to_string(ConvergenceRate r) noexcept {
    return r == ConvergenceRate::Exponential ? "exponential" : "inverse-sqrt";
}

AsymptoticClass classify(double u, double d, double p, double tol) {
    // threshold_index performs the (u, d) validation.
    (void)threshold_index(1, u, d);
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("asymptotic classification requires 0 < p < 1");
    }
    if (!(tol >= 0.0)) {
        throw DomainError("classification tolerance must be non-negative");
    }
    AsymptoticClass out;
    out.log_criterion = p * std::log(u) + (1.0 - p) * std::log(d);
    out.criterion = std::exp(out.log_criterion);
    if (std::abs(out.log_criterion) <= tol) {
        out.regime = Regime::Fair;
        out.g_limit = 0.0;
        out.var_limit = 1.0;
        out.b_limit = 1.0;
        out.limit_distribution = LimitDistribution::TwoPoint;
    } else if (out.log_criterion > 0.0) {
        out.regime = Regime::Profit;
        out.g_limit = 1.0;
        out.b_limit = 2.0;
        out.limit_distribution = LimitDistribution::PointMassPlusOne;
    } else {
        out.regime = Regime::Loss;
        out.g_limit = -1.0;
        out.b_limit = 0.0;
        out.limit_distribution = LimitDistribution::PointMassMinusOne;
    }
    return out;
}

double chernoff_hoeffding_bound(int n, double prob, double y) {
    if (n < 0) {
        throw DomainError("chernoff_hoeffding_bound requires n >= 0");
    }
    if (!(prob > 0.0 && prob < y && y < 1.0)) {
        throw DomainError("chernoff_hoeffding_bound requires 0 < prob < y < 1");
    }
    // The base is exp(-KL(y || prob)).
    const double log_base = (1.0 - y) * std::log1p(-prob) + y * std::log(prob) - xlogx(1.0 - y) - xlogx(y);
    return std::exp(n * std::min(0.0, log_base));
}

double hoeffding_tail_bound(int n, double deviation) {
    if (!(deviation >= 0.0)) {
        throw DomainError("hoeffding_tail_bound requires deviation >= 0");
    }
    return std::exp(-2.0 * deviation * deviation * n);
}

InequalitySides tilted_entropy_inequality(double d, double x) {
    if (!(d > 0.0 && d <= 1.0) || !(x >= 0.0 && x <= d)) {
        throw DomainError("tilted_entropy_inequality requires d in (0,1] and x in [0,d]");
    }
    const double lhs = std::exp(xlogx(1.0 - x) + (x == 0.0 ? 0.0 : x * safe_log(d - x)));
    return {lhs, 1.0 - x / d};
}

InequalitySides relative_entropy_inequality(double x, double p) {
    if (!(x > 0.0 && x < 1.0) || !(p > 0.0 && p < 1.0)) {
        throw DomainError("relative_entropy_inequality requires x, p in (0,1)");
    }
    const double log_lhs = x * (std::log(x) - std::log(p)) + (1.0 - x) * (std::log1p(-x) - std::log1p(-p));
    return {std::exp(log_lhs), 1.0};
}

ConvergenceProfile convergence_profile(double u, double d, double p, std::span<const int> n_list, double tol) {
    ConvergenceProfile out;
    out.limits = classify(u, d, p, tol);
    if (!std::is_sorted(n_list.begin(), n_list.end())) {
        throw DomainError("convergence_profile requires an ascending n_list");
    }
    const double q = 1.0 - p;
    const double mean_factor = p * u + q * d;

    for (int n : n_list) {
        GameParams params;
        params.n = n;
        params.u = u;
        params.d = d;
        params.p = p;
        const LogBinomialTable table(n);
        const ProfitAnalysis pa = expected_net_profit(params, table);
        const VarianceReport vr = variance_report(params, table);

        ProfileRow row;
        row.n = n;
        row.a = pa.term_a;
        row.b = pa.term_b;
        row.g = pa.g;
        row.variance = vr.variance;
        const int k0 = pa.threshold.k0;
        const double frac = static_cast<double>(k0) / n;

        switch (out.limits.regime) {
            case Regime::Fair: {
                // A <= C(n, floor(np)) p^floor(np) q^(n-floor(np)) / (1 - d)
                const int mode = static_cast<int>(std::floor(n * p));
                const double peak =
                    std::exp(log_binomial(n, mode) + mode * std::log(p) + (n - mode) * std::log(q));
                row.a_bound = d < 1.0 ? peak / (1.0 - d) : kNaN;
                row.b_gap_bound = kNaN;
                row.rate = ConvergenceRate::InverseSqrt;
                break;
            }
            case Regime::Loss:
            case Regime::Profit: {
                if (mean_factor < 1.0) {
                    row.a_bound = std::pow(mean_factor, n);
                } else {
                    // A = (pu+qd)^n P(Z >= n - k0), Z ~ Bin(n, qd/(pu+qd))
                    const double tilted = q * d / mean_factor;
                    const double y = 1.0 - frac;
                    const double tail = (tilted < y && y < 1.0) ? chernoff_hoeffding_bound(n, tilted, y) : 1.0;
                    row.a_bound = std::exp(n * std::log(mean_factor)) * tail;
                }
                if (out.limits.regime == Regime::Loss) {
                    // B = 2 P(X >= k0 + 1)
                    const double dev = static_cast<double>(k0 + 1) / n - p;
                    row.b_gap_bound = dev > 0.0 ? 2.0 * hoeffding_tail_bound(n, dev) : 2.0;
                } else {
                    // 2 - B = 2 P(X <= k0)
                    const double dev = p - frac;
                    row.b_gap_bound = dev > 0.0 ? 2.0 * hoeffding_tail_bound(n, dev) : 2.0;
                }
                row.rate = ConvergenceRate::Exponential;
                break;
            }
        }
        out.rows.push_back(row);
    }
    return out;
}

}  // namespace gamblekit
