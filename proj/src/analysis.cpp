#include "gamblekit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace gamblekit {

namespace {

constexpr long double kNegInf = -std::numeric_limits<long double>::infinity();

// k * ln(x) with the convention 0 * ln(0) = 0.
long double log_pow(int k, long double log_x) noexcept {
    return k == 0 ? 0.0L : k * log_x;
}

long double log_ext(double x) noexcept {
    return x > 0.0 ? std::log(static_cast<long double>(x)) : kNegInf;
}

struct LogFactors {
    long double lp, lq, lu, ld;
};

LogFactors log_factors(const GameParams& params) {
    return {log_ext(params.p), log_ext(params.q()), log_ext(params.u), log_ext(params.d)};
}

// Sum over k in [lo, hi] of exp(ln C(n,k) + k*a + (n-k)*b), scaled by `times`
// in log space.
ScaledSum sum_terms_scaled(const LogBinomialTable& table, int lo, int hi, long double a, long double b,
                           long double times = 1.0L) {
    if (lo > hi) {
        return {};
    }
    const int n = table.n();
    std::vector<long double> logs;
    logs.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (int k = lo; k <= hi; ++k) {
        logs.push_back(times * (table(k) + log_pow(k, a) + log_pow(n - k, b)));
    }
    return sum_exp_largest_first(std::span<const long double>(logs));
}

double sum_terms(const LogBinomialTable& table, int lo, int hi, long double a, long double b,
                 long double times = 1.0L) {
    return sum_terms_scaled(table, lo, hi, a, b, times).value();
}

long double extended_value(const ScaledSum& s) {
    return s.scaled == 0.0L ? 0.0L : std::exp(s.log_scale) * s.scaled;
}

void check_table(const GameParams& params, const LogBinomialTable& table) {
    if (table.n() != params.n) {
        throw std::invalid_argument("LogBinomialTable size does not match n");
    }
}

}  // namespace

ProfitAnalysis expected_net_profit(const GameParams& params) {
    validate_for_analysis(params);
    return expected_net_profit(params, LogBinomialTable(params.n));
}

ProfitAnalysis expected_net_profit(const GameParams& params, const LogBinomialTable& table) {
    validate_for_analysis(params);
    check_table(params, table);
    const LogFactors lf = log_factors(params);
    const int n = params.n;

    ProfitAnalysis out;
    out.threshold = threshold_index(n, params.u, params.d);
    const int k0 = out.threshold.k0;

    // Both tails are divided by their common total, which is one up to
    // rounding in the log-binomial table.
    const long double win = extended_value(sum_terms_scaled(table, k0 + 1, n, lf.lp, lf.lq));
    const long double loss = extended_value(sum_terms_scaled(table, 0, k0, lf.lp, lf.lq));
    out.win_prob = static_cast<double>(win / (win + loss));
    out.loss_prob = static_cast<double>(loss / (win + loss));
    out.term_b = 2.0 * out.win_prob;
    out.term_a = params.payout_variant == PayoutVariant::Proportional
                     ? sum_terms(table, 0, k0, lf.lp + lf.lu, lf.lq + lf.ld)
                     : 0.0;

    CompensatedSum g;
    g.add(-1.0);
    g.add(out.term_a);
    g.add(out.term_b);
    out.g = std::clamp(g.value(), -1.0, 1.0);
    return out;
}

double expected_net_profit_unbounded(const GameParams& params) {
    if (params.n < 0 || !(params.u > 0.0) || !(params.d > 0.0)) {
        throw DomainError("unbounded profit requires n >= 0 and u, d > 0");
    }
    if (!(params.p >= 0.0 && params.p <= 1.0)) {
        throw DomainError("heads probability p must lie in [0, 1]");
    }
    // pu + qd - 1 written so that exact fair points give exactly zero.
    const double excess = params.p * (params.u - 1.0) + params.q() * (params.d - 1.0);
    return params.stake * std::expm1(params.n * std::log1p(excess));
}

VarianceReport variance_report(const GameParams& params) {
    validate_for_analysis(params);
    return variance_report(params, LogBinomialTable(params.n));
}

VarianceReport variance_report(const GameParams& params, const LogBinomialTable& table) {
    if (params.payout_variant != PayoutVariant::Proportional) {
        throw DomainError("variance_report covers the proportional payout; use total_loss_variance");
    }
    const ProfitAnalysis pa = expected_net_profit(params, table);
    const LogFactors lf = log_factors(params);
    const int k0 = pa.threshold.k0;

    VarianceReport out;
    auto& v = out.summands;
    v[0] = sum_terms(table, 0, k0, lf.lp + 2.0L * lf.lu, lf.lq + 2.0L * lf.ld);
    v[1] = 4.0 * pa.win_prob * pa.loss_prob;
    v[2] = sum_terms(table, 0, k0, lf.lp + lf.lu, lf.lq + lf.ld, 2.0L);
    v[3] = 4.0 * pa.term_a * pa.win_prob;
    // 2 * sum_{k<l} a_k a_l = (sum a_k)^2 - sum a_k^2
    v[4] = std::max(0.0, pa.term_a * pa.term_a - v[2]);

    CompensatedSum total;
    total.add(v[0]);
    total.add(v[1]);
    total.add(-v[2]);
    total.add(-v[3]);
    total.add(-v[4]);
    out.variance = total.value();

    CompensatedSum var_c;
    var_c.add(v[0]);
    var_c.add(-v[2]);
    var_c.add(-v[4]);
    out.var_c = var_c.value();
    out.var_d = v[1];
    out.cov_cd = -0.5 * v[3];
    return out;
}

double v5_literal(const GameParams& params) {
    validate_for_analysis(params);
    const LogBinomialTable table(params.n);
    const LogFactors lf = log_factors(params);
    const int n = params.n;
    const int k0 = threshold_index(n, params.u, params.d).k0;
    std::vector<long double> log_a(static_cast<std::size_t>(k0) + 1);
    for (int k = 0; k <= k0; ++k) {
        log_a[static_cast<std::size_t>(k)] = table(k) + log_pow(k, lf.lp + lf.lu) + log_pow(n - k, lf.lq + lf.ld);
    }
    ExtendedSum acc;
    for (int k = 0; k <= k0; ++k) {
        for (int l = k + 1; l <= k0; ++l) {
            const long double t = log_a[static_cast<std::size_t>(k)] + log_a[static_cast<std::size_t>(l)];
            if (t != kNegInf) {
                acc.add(std::exp(t));
            }
        }
    }
    return static_cast<double>(2.0L * acc.value());
}

double total_loss_variance(const GameParams& params) {
    GameParams tl = params;
    tl.payout_variant = PayoutVariant::TotalLoss;
    const ProfitAnalysis pa = expected_net_profit(tl);
    return 4.0 * pa.win_prob * pa.loss_prob * params.stake * params.stake;
}

double binomial_upper_tail(int n, double p, int k) {
    if (n < 0 || !(p >= 0.0 && p <= 1.0)) {
        throw DomainError("binomial_upper_tail requires n >= 0 and p in [0, 1]");
    }
    const LogBinomialTable table(n);
    return sum_terms(table, std::max(k, 0), n, log_ext(p), log_ext(1.0 - p));
}

double binomial_lower_tail(int n, double p, int k) {
    if (n < 0 || !(p >= 0.0 && p <= 1.0)) {
        throw DomainError("binomial_lower_tail requires n >= 0 and p in [0, 1]");
    }
    const LogBinomialTable table(n);
    return sum_terms(table, 0, std::min(k, n), log_ext(p), log_ext(1.0 - p));
}

}  // namespace gamblekit
