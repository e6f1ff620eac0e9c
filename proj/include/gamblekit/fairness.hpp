#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace gamblekit {

enum class FairStatus {
    Crossing,        ///< G attains zero inside the bracket
    JumpAcrossZero,  ///< G steps over zero at a threshold discontinuity
    NoSignChange,    ///< G keeps one sign over the whole scan range
};

std::string_view to_string(FairStatus s) noexcept;

/// Bracket around the parameter value at which the expected net profit
/// (proportional payout, unit stake) changes sign.
struct FairSolution {
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    double g_lo = 0.0;
    double g_hi = 0.0;
    FairStatus status = FairStatus::NoSignChange;

    double midpoint() const noexcept { return 0.5 * (bracket_lo + bracket_hi); }

    friend bool operator==(const FairSolution&, const FairSolution&) = default;
};

constexpr double kDefaultUMax = 4.0;

/// Fair up factor for a given down factor: scans u over [1, u_max] on a grid
/// of at least 4n+1 points, refined until neighbouring points differ in k0 by
/// at most one, then bisects the first sign change down to width tol.
/// Requires 0 < d < 1, 0 < p < 1, tol > 0, u_max > 1.
FairSolution fair_u_for_d(int n, double d, double p, double tol, double u_max = kDefaultUMax);

/// Fair heads probability for given factors. k0 does not depend on p, so G is
/// continuous in p and a Crossing is expected whenever the game is winnable.
FairSolution fair_p(int n, double u, double d, double tol);

struct FairCurvePoint {
    double d = 0.0;
    FairSolution solution;
};

/// fair_u_for_d over a grid of down factors, evaluated on up to `workers`
/// threads (0 = worker_count()). Output order follows d_grid.
std::vector<FairCurvePoint> fair_curve(int n, double p, std::span<const double> d_grid, double tol,
                                       double u_max = kDefaultUMax, unsigned workers = 0);

}  // namespace gamblekit
