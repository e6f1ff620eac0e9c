#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gamblekit {

/// Neumaier-compensated running sum.
template <typename T>
class BasicCompensatedSum {
public:
    void add(T x) noexcept {
        const T t = sum_ + x;
        if ((sum_ < 0 ? -sum_ : sum_) >= (x < 0 ? -x : x)) {
            compensation_ += (sum_ - t) + x;
        } else {
            compensation_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    T value() const noexcept { return sum_ + compensation_; }

private:
    T sum_ = 0;
    T compensation_ = 0;
};

using CompensatedSum = BasicCompensatedSum<double>;
using ExtendedSum = BasicCompensatedSum<long double>;

double log_binomial(int n, int k);

/// ln C(n,k) for k = 0..n, built once per n.
class LogBinomialTable {
public:
    explicit LogBinomialTable(int n);

    int n() const noexcept { return n_; }
    /// Extended precision, so that sums of binomial terms near 2^-n keep
    /// full double accuracy after exponentiation.
    long double operator()(int k) const { return values_[static_cast<std::size_t>(k)]; }

private:
    int n_;
    std::vector<long double> values_;
};

/// A positive sum represented as exp(log_scale) * scaled.
struct ScaledSum {
    long double log_scale = 0.0L;
    long double scaled = 0.0L;

    double value() const noexcept;
    double log_value() const noexcept;
};

/// Sums exp(log_terms[i]) starting at the largest term and walking outwards
/// towards smaller neighbours, with compensated accumulation. Terms equal to
/// -inf contribute zero. For unimodal sequences (binomial shapes) the visiting
/// order is exactly largest-first.
ScaledSum sum_exp_largest_first(std::span<const long double> log_terms);
ScaledSum sum_exp_largest_first(std::span<const double> log_terms);

/// ln(p) with ln(0) = -inf.
double safe_log(double p) noexcept;

}  // namespace gamblekit
