#include "gamblekit/collision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gamblekit/analysis.hpp"
#include "gamblekit/game.hpp"
#include "gamblekit/numeric.hpp"

namespace gamblekit {

namespace {

constexpr double kNormalisationTolerance = 1e-12;
constexpr long double kAccuracyBudget = 1e-13L;

void check_m(int m) {
    if (m < 1) {
        throw DomainError("number of draws m must be at least 1");
    }
}

long double factorial(int m) {
    long double f = 1.0L;
    for (int i = 2; i <= m; ++i) {
        f *= i;
    }
    return f;
}

// Kahan-summed power sums s_j = sum_k w_k^j, j = 1..m.
std::vector<long double> power_sums(std::span<const double> w, int m) {
    std::vector<long double> s(static_cast<std::size_t>(m) + 1, 0.0L);
    std::vector<long double> comp(s.size(), 0.0L);
    for (double x : w) {
        long double power = 1.0L;
        for (int j = 1; j <= m; ++j) {
            power *= x;
            if (power == 0.0L) {
                break;
            }
            const long double y = power - comp[static_cast<std::size_t>(j)];
            const long double t = s[static_cast<std::size_t>(j)] + y;
            comp[static_cast<std::size_t>(j)] = (t - s[static_cast<std::size_t>(j)]) - y;
            s[static_cast<std::size_t>(j)] = t;
        }
    }
    return s;
}

}  // namespace

ScoreWeights ScoreWeights::binomial(int n, double p) {
    if (n < 0 || !(p >= 0.0 && p <= 1.0)) {
        throw DomainError("binomial score weights require n >= 0 and p in [0, 1]");
    }
    const LogBinomialTable table(n);
    const long double lp = std::log(static_cast<long double>(p));
    const long double lq = std::log(static_cast<long double>(1.0 - p));
    std::vector<double> w(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        const long double log_mass = table(k) + (k == 0 ? 0.0L : k * lp) + (n - k == 0 ? 0.0L : (n - k) * lq);
        w[static_cast<std::size_t>(k)] = static_cast<double>(std::exp(log_mass));
    }
    return from_values(std::move(w));
}

ScoreWeights ScoreWeights::from_values(std::vector<double> values) {
    if (values.empty()) {
        throw DomainError("score weights must not be empty");
    }
    CompensatedSum total;
    for (double v : values) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw DomainError("score weights must be finite and non-negative");
        }
        total.add(v);
    }
    if (std::abs(total.value() - 1.0) > kNormalisationTolerance) {
        throw DomainError("score weights must sum to 1");
    }
    return ScoreWeights(std::move(values));
}

std::string_view to_string(SymmetricMethod m) noexcept {
    return m == SymmetricMethod::NewtonIdentities ? "newton-identities" : "product-expansion";
}

double all_distinct_by_expansion(const ScoreWeights& weights, int m) {
    check_m(m);
    if (static_cast<std::size_t>(m) > weights.size()) {
        return 0.0;
    }
    // e[j] after processing a prefix of the weights; every update adds
    // non-negative terms.
    std::vector<long double> e(static_cast<std::size_t>(m) + 1, 0.0L);
    e[0] = 1.0L;
    int filled = 0;
    for (double w : weights.values()) {
        filled = std::min(filled + 1, m);
        for (int j = filled; j >= 1; --j) {
            e[static_cast<std::size_t>(j)] += w * e[static_cast<std::size_t>(j) - 1];
        }
    }
    return static_cast<double>(std::clamp(factorial(m) * e[static_cast<std::size_t>(m)], 0.0L, 1.0L));
}

DistinctProbability all_distinct_probability_detailed(const ScoreWeights& weights, int m) {
    check_m(m);
    if (static_cast<std::size_t>(m) > weights.size()) {
        return {0.0, SymmetricMethod::NewtonIdentities};
    }
    const std::vector<long double> s = power_sums(weights.values(), m);

    // k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} s_i. The same recursion without
    // signs gives the complete homogeneous h_k, which bounds the magnitude of
    // every partial sum and hence the rounding error.
    std::vector<long double> e(static_cast<std::size_t>(m) + 1, 0.0L);
    std::vector<long double> h(static_cast<std::size_t>(m) + 1, 0.0L);
    e[0] = 1.0L;
    h[0] = 1.0L;
    for (int k = 1; k <= m; ++k) {
        long double signed_sum = 0.0L;
        long double magnitude = 0.0L;
        for (int i = 1; i <= k; ++i) {
            const long double term = e[static_cast<std::size_t>(k - i)] * s[static_cast<std::size_t>(i)];
            signed_sum += (i % 2 == 1) ? term : -term;
            magnitude += h[static_cast<std::size_t>(k - i)] * s[static_cast<std::size_t>(i)];
        }
        e[static_cast<std::size_t>(k)] = signed_sum / k;
        h[static_cast<std::size_t>(k)] = magnitude / k;
    }
    const long double scale = factorial(m);
    const long double error_estimate =
        scale * h[static_cast<std::size_t>(m)] * m * std::numeric_limits<long double>::epsilon() * 4.0L;
    if (!(error_estimate <= kAccuracyBudget)) {
        return {all_distinct_by_expansion(weights, m), SymmetricMethod::ProductExpansion};
    }
    const long double value = std::clamp(scale * e[static_cast<std::size_t>(m)], 0.0L, 1.0L);
    return {static_cast<double>(value), SymmetricMethod::NewtonIdentities};
}

double all_distinct_probability(const ScoreWeights& weights, int m) {
    return all_distinct_probability_detailed(weights, m).value;
}

double collision_probability(const ScoreWeights& weights, int m) {
    return 1.0 - all_distinct_probability(weights, m);
}

double maclaurin_upper_bound(int n, int m) {
    check_m(m);
    if (n < 0) {
        throw DomainError("maclaurin_upper_bound requires n >= 0");
    }
    const long long outcomes = static_cast<long long>(n) + 1;
    if (m > outcomes) {
        return 0.0;
    }
    long double bound = 1.0L;
    for (int i = 0; i < m; ++i) {
        bound *= static_cast<long double>(outcomes - i) / static_cast<long double>(outcomes);
    }
    return static_cast<double>(bound);
}

}  // namespace gamblekit
