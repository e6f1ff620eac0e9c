#include "gamblekit/numeric.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gamblekit {

double log_binomial(int n, int k) {
    if (k < 0 || k > n) {
        return -std::numeric_limits<double>::infinity();
    }
    if (k == 0 || k == n) {
        return 0.0;
    }
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

LogBinomialTable::LogBinomialTable(int n) : n_(n) {
    if (n < 0) {
        throw std::invalid_argument("LogBinomialTable: n must be non-negative");
    }
    values_.resize(static_cast<std::size_t>(n) + 1);
    const long double log_n_fact = std::lgamma(n + 1.0L);
    for (int k = 0; k <= n; ++k) {
        values_[static_cast<std::size_t>(k)] =
            (k == 0 || k == n) ? 0.0L
                               : log_n_fact - std::lgamma(k + 1.0L) - std::lgamma(n - k + 1.0L);
    }
}

double ScaledSum::value() const noexcept {
    if (scaled == 0.0L) {
        return 0.0;
    }
    return static_cast<double>(std::exp(log_scale) * scaled);
}

double ScaledSum::log_value() const noexcept {
    if (scaled == 0.0L) {
        return -std::numeric_limits<double>::infinity();
    }
    return static_cast<double>(log_scale + std::log(scaled));
}

ScaledSum sum_exp_largest_first(std::span<const double> log_terms) {
    const std::vector<long double> extended(log_terms.begin(), log_terms.end());
    return sum_exp_largest_first(std::span<const long double>(extended));
}

ScaledSum sum_exp_largest_first(std::span<const long double> log_terms) {
    constexpr long double kNegInf = -std::numeric_limits<long double>::infinity();
    ScaledSum out;
    if (log_terms.empty()) {
        return out;
    }
    std::size_t peak = 0;
    for (std::size_t i = 1; i < log_terms.size(); ++i) {
        if (log_terms[i] > log_terms[peak]) {
            peak = i;
        }
    }
    const long double top = log_terms[peak];
    if (top == kNegInf) {
        return out;
    }
    out.log_scale = top;

    ExtendedSum acc;
    acc.add(1.0L);
    // Two cursors move away from the peak; the larger neighbour goes next.
    std::size_t left = peak;
    std::size_t right = peak + 1;
    while (left > 0 || right < log_terms.size()) {
        const bool take_left =
            left > 0 && (right >= log_terms.size() || log_terms[left - 1] >= log_terms[right]);
        const long double t = take_left ? log_terms[--left] : log_terms[right++];
        if (t != kNegInf) {
            acc.add(std::exp(t - top));
        }
    }
    out.scaled = acc.value();
    return out;
}

double safe_log(double p) noexcept {
    return p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity();
}

}  // namespace gamblekit
