#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gamblekit {

/// Raised when game parameters violate the assumptions an operation needs.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class PayoutVariant {
    Proportional,  ///< loser keeps stake * final/initial
    TotalLoss,     ///< loser forfeits the stake
};

std::string_view to_string(PayoutVariant v) noexcept;
PayoutVariant parse_payout_variant(std::string_view s);

/// Parameters of the capped-payout coin-toss game. Defaults reproduce the
/// bar-room game: 100 rounds, +50% on heads, -40% on tails, fair coin.
struct GameParams {
    int n = 100;
    double u = 1.5;
    double d = 0.6;
    double p = 0.5;
    double stake = 1.0;
    double initial_score = 100.0;
    PayoutVariant payout_variant = PayoutVariant::Proportional;

    double q() const noexcept { return 1.0 - p; }

    friend bool operator==(const GameParams&, const GameParams&) = default;
};

/// Throws DomainError unless 0 < d <= 1 <= u, u != d, 0 <= p <= 1, n >= 1,
/// stake >= 0 and initial_score > 0.
void validate_for_analysis(const GameParams& params);

/// Looser check used by the simulator: any u, d > 0.
void validate_for_simulation(const GameParams& params);

/// Largest heads count that still loses. The player wins iff heads > k0.
struct ThresholdIndex {
    int k0 = 0;
    /// True when n*ln(1/d)/ln(u/d) is an integer, i.e. heads == k0 lands
    /// exactly on the initial score (which counts as a loss).
    bool exact_boundary = false;
    /// The unrounded boundary n*ln(1/d)/ln(u/d).
    double ratio = 0.0;

    friend bool operator==(const ThresholdIndex&, const ThresholdIndex&) = default;
};

ThresholdIndex threshold_index(int n, double u, double d);

/// Inclusive range of winning heads counts; empty when lo > hi.
struct WinRange {
    int lo = 0;
    int hi = -1;

    bool contains(int k) const noexcept { return k >= lo && k <= hi; }
    bool empty() const noexcept { return lo > hi; }
};

/// Win set for any u, d > 0 (the simulator admits factors outside the
/// analysis assumptions). Under 0 < d <= 1 <= u, u != d this is [k0+1, n].
WinRange win_range(int n, double u, double d);

double log_final_score(const GameParams& params, int k);

/// initial_score * u^k * d^(n-k), evaluated in log space. Overflows to +inf
/// (or underflows to 0) only when the true value is outside double range;
/// use log_final_score for those.
double final_score(const GameParams& params, int k);

/// Net profit in currency units after k heads.
double net_profit_given_heads(const GameParams& params, int k);
double net_profit_given_heads(const GameParams& params, const WinRange& wins, int k);

}  // namespace gamblekit
