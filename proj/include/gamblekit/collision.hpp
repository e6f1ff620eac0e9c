#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace gamblekit {

/// Probability mass over final-score indices k = 0..n.
class ScoreWeights {
public:
    /// Bin(n, p) masses C(n,k) p^k q^(n-k).
    static ScoreWeights binomial(int n, double p);

    /// Arbitrary masses; rejects negative or non-finite entries and totals
    /// further than 1e-12 from one.
    static ScoreWeights from_values(std::vector<double> values);

    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }

private:
    explicit ScoreWeights(std::vector<double> values) : values_(std::move(values)) {}
    std::vector<double> values_;
};

enum class SymmetricMethod {
    NewtonIdentities,   ///< power sums + Newton recursion
    ProductExpansion,   ///< prod_k (1 + w_k t), coefficient by coefficient
};

std::string_view to_string(SymmetricMethod m) noexcept;

struct DistinctProbability {
    double value = 0.0;
    SymmetricMethod method = SymmetricMethod::NewtonIdentities;
};

/// Probability that m independent draws from `weights` are pairwise
/// distinct, m! * e_m(weights). Uses Newton's identities on the power sums;
/// when the recursion's cancellation could cost more than 1e-13 absolute
/// accuracy it switches to the all-positive product expansion.
/// m < 1 is rejected; m > weights.size() gives 0.
DistinctProbability all_distinct_probability_detailed(const ScoreWeights& weights, int m);
double all_distinct_probability(const ScoreWeights& weights, int m);

/// 1 - all_distinct_probability.
double collision_probability(const ScoreWeights& weights, int m);

/// m! C(n+1, m) / (n+1)^m: the all-distinct probability for uniform masses
/// over n+1 outcomes, an upper bound for every weight vector of that size.
double maclaurin_upper_bound(int n, int m);

/// m! * e_m by the product expansion alone.
double all_distinct_by_expansion(const ScoreWeights& weights, int m);

}  // namespace gamblekit
