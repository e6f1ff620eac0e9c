#pragma once

#include <array>

#include "gamblekit/game.hpp"
#include "gamblekit/numeric.hpp"

namespace gamblekit {

/// Expected net profit at given parameters, per unit stake.
///
/// g = -1 + term_a + term_b, where term_a is the loss-branch contribution
/// sum_{k<=k0} C(n,k) (pu)^k (qd)^(n-k) and term_b = 2 * win_prob. Under the
/// total-loss payout term_a is identically zero.
struct ProfitAnalysis {
    double g = 0.0;
    double term_a = 0.0;
    double term_b = 0.0;
    double win_prob = 0.0;
    double loss_prob = 0.0;
    ThresholdIndex threshold;

    friend bool operator==(const ProfitAnalysis&, const ProfitAnalysis&) = default;
};

ProfitAnalysis expected_net_profit(const GameParams& params);
/// Same, reusing a precomputed ln C(n,k) table (table.n() must equal params.n).
ProfitAnalysis expected_net_profit(const GameParams& params, const LogBinomialTable& table);

/// stake * ((pu + qd)^n - 1): expected net profit when the payout is always
/// stake * final/initial, with no cap on the prize.
double expected_net_profit_unbounded(const GameParams& params);

/// Variance of the unit-stake net profit under the proportional payout,
/// split into the five summands
///   variance = v1 + v2 - v3 - v4 - v5
/// with
///   v1 = sum_{k<=k0} C(n,k) (p u^2)^k (q d^2)^(n-k)
///   v2 = 4 P(win) P(loss)
///   v3 = sum_{k<=k0} C(n,k)^2 (pu)^(2k) (qd)^(2(n-k))
///   v4 = 4 A P(win)
///   v5 = 2 sum_{0<=k<l<=k0} C(n,k) C(n,l) (pu)^(k+l) (qd)^(2n-k-l)
/// and, writing the profit as -1 + C + D (loss-branch score ratio C, win
/// indicator D doubled), var_c = v1 - v3 - v5, var_d = v2, cov_cd = -v4 / 2.
struct VarianceReport {
    double variance = 0.0;
    std::array<double, 5> summands{};
    double var_c = 0.0;
    double var_d = 0.0;
    double cov_cd = 0.0;

    friend bool operator==(const VarianceReport&, const VarianceReport&) = default;
};

VarianceReport variance_report(const GameParams& params);
VarianceReport variance_report(const GameParams& params, const LogBinomialTable& table);

/// v5 by the literal O(k0^2) double loop. Debug path for the O(n) form.
double v5_literal(const GameParams& params);

/// Variance of the net profit (currency units) under the total-loss payout:
/// 4 * P(win) * P(loss) * stake^2.
double total_loss_variance(const GameParams& params);

/// P(X >= k) and P(X <= k) for X ~ Bin(n, p), summed in log space.
double binomial_upper_tail(int n, double p, int k);
double binomial_lower_tail(int n, double p, int k);

}  // namespace gamblekit
