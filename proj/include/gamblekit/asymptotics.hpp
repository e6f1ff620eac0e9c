#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace gamblekit {

enum class Regime { Loss, Fair, Profit };

/// Limit in distribution of the unit-stake net profit as n grows.
enum class LimitDistribution {
    PointMassMinusOne,
    PointMassPlusOne,
    TwoPoint,  ///< +1 and -1, each with probability 1/2
};

std::string_view to_string(Regime r) noexcept;
std::string_view to_string(LimitDistribution l) noexcept;

/// Large-n behaviour of the game, driven by the sign of p ln u + q ln d.
struct AsymptoticClass {
    Regime regime = Regime::Loss;
    double criterion = 1.0;      ///< u^p d^q
    double log_criterion = 0.0;  ///< p ln u + q ln d
    double g_limit = 0.0;        ///< -1, 0 or +1
    double var_limit = 0.0;      ///< 0, or 1 on the fair boundary
    double a_limit = 0.0;        ///< loss-branch term always vanishes
    double b_limit = 0.0;        ///< 0, 1 or 2
    LimitDistribution limit_distribution = LimitDistribution::PointMassMinusOne;

    friend bool operator==(const AsymptoticClass&, const AsymptoticClass&) = default;
};

constexpr double kDefaultFairTolerance = 1e-12;

/// Requires 0 < d <= 1 <= u, u != d, 0 < p < 1 and tol >= 0. The regime is
/// Fair when |p ln u + q ln d| <= tol.
AsymptoticClass classify(double u, double d, double p, double tol = kDefaultFairTolerance);

/// Relative-entropy tail bound for S ~ Bin(n, prob) and prob < y < 1:
///   P(S >= n y) <= (((1-prob)^(1-y) prob^y) / ((1-y)^(1-y) y^y))^n.
double chernoff_hoeffding_bound(int n, double prob, double y);

/// exp(-2 deviation^2 n): one-sided bound on P(S - n prob >= n deviation).
double hoeffding_tail_bound(int n, double deviation);

struct InequalitySides {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// (1-x)^(1-x) (d-x)^x against 1 - x/d, for d in (0,1], x in [0,d].
/// lhs >= rhs, strictly when d < 1 and 0 < x < d.
InequalitySides tilted_entropy_inequality(double d, double x);

/// (x/p)^x ((1-x)/(1-p))^(1-x) against 1, for x, p in (0,1).
/// lhs >= 1 with equality iff x == p.
InequalitySides relative_entropy_inequality(double x, double p);

enum class ConvergenceRate {
    Exponential,  ///< off the fair boundary
    InverseSqrt,  ///< on the fair boundary
};

std::string_view to_string(ConvergenceRate r) noexcept;

/// Exact finite-n quantities side by side with the concentration bounds that
/// drive them to their limits.
struct ProfileRow {
    int n = 0;
    double a = 0.0;
    double b = 0.0;
    double g = 0.0;
    double variance = 0.0;
    /// Upper bound on a; NaN when no bound applies.
    double a_bound = 0.0;
    /// Upper bound on |b - b_limit|; NaN on the fair boundary.
    double b_gap_bound = 0.0;
    ConvergenceRate rate = ConvergenceRate::Exponential;
};

struct ConvergenceProfile {
    AsymptoticClass limits;
    std::vector<ProfileRow> rows;
};

/// Requires the general assumption on (u, d), 0 < p < 1 and ascending n_list.
ConvergenceProfile convergence_profile(double u, double d, double p, std::span<const int> n_list,
                                       double tol = kDefaultFairTolerance);

}  // namespace gamblekit
