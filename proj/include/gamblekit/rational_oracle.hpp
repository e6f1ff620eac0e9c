#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "gamblekit/game.hpp"

namespace gamblekit {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "3/2", "-7", "0.6" or "1.25e-1" into an exact rational. Anything
/// else (including symbolic or irrational forms) is rejected with DomainError.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);
double to_double(const Rational& r);

struct RationalParams {
    int n = 1;
    Rational u{3, 2};
    Rational d{3, 5};
    Rational p{1, 2};
    PayoutVariant payout_variant = PayoutVariant::Proportional;

    /// Nearest-double image, for comparison against the floating-point path.
    GameParams to_game_params() const;
};

/// Exact mean and variance of the unit-stake net profit.
struct ExactMoments {
    Rational g;
    Rational variance;
    int k0 = 0;
};

/// Largest heads count k in [0, n] with u^k d^(n-k) <= 1, decided exactly.
int exact_threshold(int n, const Rational& u, const Rational& d);

constexpr int kOracleMaxRounds = 40;

/// Direct summation over k = 0..n in rational arithmetic. Requires
/// 1 <= n <= kOracleMaxRounds, 0 < d <= 1 <= u, u != d, 0 <= p <= 1.
ExactMoments exact_rational_oracle(const RationalParams& params);

}  // namespace gamblekit
