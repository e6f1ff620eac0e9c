#include "gamblekit/game.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace gamblekit {

namespace {

// Window around an integer inside which the double ratio cannot be trusted
// and the exact checks below take over.
constexpr double kRefineWindow = 1e-9;
// Integer snapping tolerance when the factors are not recognisable rationals.
constexpr double kBoundaryTolerance = 1e-12;
constexpr std::uint64_t kMaxDenominator = 1'000'000;

struct Fraction {
    std::uint64_t num;
    std::uint64_t den;
};

// Best rational approximation of x with a small denominator, accepted only if
// it reproduces x to within a few ulps.
std::optional<Fraction> recognise_rational(double x) {
    if (!(x > 0.0) || !std::isfinite(x) || x > 1e6) {
        return std::nullopt;
    }
    long double r = x;
    std::uint64_t h_prev = 1, h_prev2 = 0;
    std::uint64_t k_prev = 0, k_prev2 = 1;
    for (int iter = 0; iter < 64; ++iter) {
        const long double a_ld = std::floor(r);
        const auto a = static_cast<std::uint64_t>(a_ld);
        const std::uint64_t h = a * h_prev + h_prev2;
        const std::uint64_t k = a * k_prev + k_prev2;
        if (k > kMaxDenominator) {
            return std::nullopt;
        }
        const long double err = std::fabs(static_cast<long double>(x) * k - static_cast<long double>(h));
        if (err <= 4.0L * 1.1102230246251565e-16L * static_cast<long double>(x) * k) {
            return Fraction{h, k};
        }
        const long double frac = r - a_ld;
        if (frac == 0.0L) {
            return std::nullopt;
        }
        r = 1.0L / frac;
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
    }
    return std::nullopt;
}

void add_factors(std::uint64_t v, long long sign, std::map<std::uint64_t, long long>& out) {
    for (std::uint64_t f = 2; f * f <= v; ++f) {
        while (v % f == 0) {
            out[f] += sign;
            v /= f;
        }
    }
    if (v > 1) {
        out[v] += sign;
    }
}

// u^m * d^(n-m) == 1 exactly, from prime exponent vectors.
bool is_exact_boundary(int n, int m, Fraction u, Fraction d) {
    std::map<std::uint64_t, long long> eu, ed;
    add_factors(u.num, 1, eu);
    add_factors(u.den, -1, eu);
    add_factors(d.num, 1, ed);
    add_factors(d.den, -1, ed);
    std::map<std::uint64_t, long long> total;
    for (const auto& [prime, e] : eu) {
        total[prime] += static_cast<long long>(m) * e;
    }
    for (const auto& [prime, e] : ed) {
        total[prime] += static_cast<long long>(n - m) * e;
    }
    return std::all_of(total.begin(), total.end(), [](const auto& kv) { return kv.second == 0; });
}

long long refined_floor(int n, Fraction u, Fraction d) {
    using Float50 = boost::multiprecision::cpp_bin_float_50;
    const Float50 uf = Float50(u.num) / Float50(u.den);
    const Float50 df = Float50(d.num) / Float50(d.den);
    const Float50 r = Float50(n) * log(1 / df) / log(uf / df);
    return static_cast<long long>(floor(r));
}

struct Boundary {
    double ratio;  // n*ln(1/d)/ln(u/d) as a double
    long long floor_value;
    bool exact;
};

Boundary locate_boundary(int n, double u, double d) {
    const double ratio = n * -std::log(d) / (std::log(u) - std::log(d));
    const double nearest = std::round(ratio);
    if (std::abs(ratio - nearest) > kRefineWindow) {
        return {ratio, static_cast<long long>(std::floor(ratio)), false};
    }
    const auto ru = recognise_rational(u);
    const auto rd = recognise_rational(d);
    if (ru && rd) {
        const int m = static_cast<int>(nearest);
        if (is_exact_boundary(n, m, *ru, *rd)) {
            return {ratio, m, true};
        }
        return {ratio, refined_floor(n, *ru, *rd), false};
    }
    if (std::abs(ratio - nearest) <= kBoundaryTolerance) {
        return {ratio, static_cast<long long>(nearest), true};
    }
    return {ratio, static_cast<long long>(std::floor(ratio)), false};
}

}  // namespace

std::string_view to_string(PayoutVariant v) noexcept {
    switch (v) {
        case PayoutVariant::Proportional:
            return "proportional";
        case PayoutVariant::TotalLoss:
            return "total-loss";
    }
    return "proportional";
}

PayoutVariant parse_payout_variant(std::string_view s) {
    if (s == "proportional") {
        return PayoutVariant::Proportional;
    }
    if (s == "total-loss") {
        return PayoutVariant::TotalLoss;
    }
    throw DomainError("unknown payout variant '" + std::string(s) + "' (expected proportional|total-loss)");
}

namespace {

void validate_common(const GameParams& params) {
    if (params.n < 1) {
        throw DomainError("number of rounds n must be at least 1");
    }
    if (!(params.p >= 0.0 && params.p <= 1.0)) {
        throw DomainError("heads probability p must lie in [0, 1]");
    }
    if (!(params.stake >= 0.0) || !std::isfinite(params.stake)) {
        throw DomainError("stake must be finite and non-negative");
    }
    if (!(params.initial_score > 0.0) || !std::isfinite(params.initial_score)) {
        throw DomainError("initial score must be finite and positive");
    }
}

void validate_factors(double u, double d) {
    if (!(d > 0.0)) {
        throw DomainError("down factor d must be positive (requires 0 < d <= 1 <= u)");
    }
    if (!(d <= 1.0)) {
        throw DomainError("down factor d must not exceed 1 (requires 0 < d <= 1 <= u)");
    }
    if (!(u >= 1.0) || !std::isfinite(u)) {
        throw DomainError("up factor u must be finite and at least 1 (requires 0 < d <= 1 <= u)");
    }
    if (u == d) {
        throw DomainError("up and down factors must differ (u != d)");
    }
}

}  // namespace

void validate_for_analysis(const GameParams& params) {
    validate_common(params);
    validate_factors(params.u, params.d);
}

void validate_for_simulation(const GameParams& params) {
    validate_common(params);
    if (!(params.u > 0.0) || !(params.d > 0.0) || !std::isfinite(params.u) || !std::isfinite(params.d)) {
        throw DomainError("simulation requires finite factors u, d > 0");
    }
}

ThresholdIndex threshold_index(int n, double u, double d) {
    if (n < 1) {
        throw DomainError("number of rounds n must be at least 1");
    }
    validate_factors(u, d);
    const Boundary b = locate_boundary(n, u, d);
    const long long k0 = std::clamp<long long>(b.floor_value, 0, n);
    return {static_cast<int>(k0), b.exact, b.ratio};
}

WinRange win_range(int n, double u, double d) {
    if (n < 0 || !(u > 0.0) || !(d > 0.0)) {
        throw DomainError("win_range requires n >= 0 and u, d > 0");
    }
    if (u == d) {
        return u > 1.0 ? WinRange{0, n} : WinRange{0, -1};
    }
    const Boundary b = locate_boundary(n, u, d);
    if (u > d) {
        // Score increases with k: win strictly above the boundary.
        const long long lo = std::clamp<long long>(b.floor_value + 1, 0, static_cast<long long>(n) + 1);
        return {static_cast<int>(lo), n};
    }
    // Score decreases with k: win strictly below the boundary.
    const long long hi = b.exact ? b.floor_value - 1 : b.floor_value;
    return {0, static_cast<int>(std::clamp<long long>(hi, -1, n))};
}

double log_final_score(const GameParams& params, int k) {
    if (k < 0 || k > params.n) {
        throw std::out_of_range("heads count k must lie in [0, n]");
    }
    double log_score = std::log(params.initial_score);
    if (k > 0) {
        log_score += k * std::log(params.u);
    }
    if (params.n - k > 0) {
        log_score += (params.n - k) * std::log(params.d);
    }
    return log_score;
}

double final_score(const GameParams& params, int k) {
    return std::exp(log_final_score(params, k));
}

double net_profit_given_heads(const GameParams& params, const WinRange& wins, int k) {
    if (k < 0 || k > params.n) {
        throw std::out_of_range("heads count k must lie in [0, n]");
    }
    if (wins.contains(k)) {
        return params.stake;
    }
    if (params.payout_variant == PayoutVariant::TotalLoss) {
        return -params.stake;
    }
    const double log_ratio = log_final_score(params, k) - std::log(params.initial_score);
    return params.stake * std::expm1(log_ratio);
}

double net_profit_given_heads(const GameParams& params, int k) {
    return net_profit_given_heads(params, win_range(params.n, params.u, params.d), k);
}

}  // namespace gamblekit
