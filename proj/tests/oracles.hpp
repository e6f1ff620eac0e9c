#pragma once

// Reference computations that share no code with the library.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gamblekit/game.hpp"
#include "gamblekit/rational_oracle.hpp"

namespace oracle {

// C(n,k) p^k q^(n-k) via lgamma in long double.
inline long double pmf(int n, long double p, int k) {
    const long double q = 1.0L - p;
    if (p == 0.0L) {
        return k == 0 ? 1.0L : 0.0L;
    }
    if (q == 0.0L) {
        return k == n ? 1.0L : 0.0L;
    }
    const long double lc = std::lgamma(n + 1.0L) - std::lgamma(k + 1.0L) - std::lgamma(n - k + 1.0L);
    return std::exp(lc + k * std::log(p) + (n - k) * std::log(q));
}

// Threshold by scanning scores directly.
inline int scan_threshold(int n, long double u, long double d) {
    int k0 = 0;
    for (int k = 0; k <= n; ++k) {
        if (k * std::log(u) + (n - k) * std::log(d) <= 0.0L) {
            k0 = k;
        }
    }
    return k0;
}

struct Moments {
    long double mean = 0;
    long double variance = 0;
    long double win = 0;
};

// Mean and variance of the unit-stake net profit straight from the pmf.
inline Moments pmf_moments(const gamblekit::GameParams& g, int k0) {
    Moments m;
    long double second = 0;
    for (int k = 0; k <= g.n; ++k) {
        const long double w = pmf(g.n, g.p, k);
        long double profit;
        if (k > k0) {
            profit = 1.0L;
            m.win += w;
        } else if (g.payout_variant == gamblekit::PayoutVariant::TotalLoss) {
            profit = -1.0L;
        } else {
            profit = std::exp(k * std::log((long double)g.u) + (g.n - k) * std::log((long double)g.d)) - 1.0L;
        }
        m.mean += w * profit;
        second += w * profit * profit;
    }
    m.variance = second - m.mean * m.mean;
    return m;
}

// Sum over all ordered m-tuples of outcomes that are pairwise distinct.
inline double brute_force_distinct(const std::vector<double>& w, int m) {
    const int N = static_cast<int>(w.size());
    std::vector<int> idx(static_cast<std::size_t>(m), 0);
    long double total = 0;
    while (true) {
        bool distinct = true;
        for (int i = 0; i < m && distinct; ++i) {
            for (int j = i + 1; j < m; ++j) {
                if (idx[i] == idx[j]) {
                    distinct = false;
                    break;
                }
            }
        }
        if (distinct) {
            long double prod = 1;
            for (int i = 0; i < m; ++i) {
                prod *= w[static_cast<std::size_t>(idx[i])];
            }
            total += prod;
        }
        int pos = m - 1;
        while (pos >= 0 && ++idx[pos] == N) {
            idx[pos] = 0;
            --pos;
        }
        if (pos < 0) {
            break;
        }
    }
    return static_cast<double>(total);
}

// P(X >= k), X ~ Bin(n, p), exactly.
inline gamblekit::Rational exact_upper_tail(int n, const gamblekit::Rational& p, int k) {
    gamblekit::Rational total = 0;
    boost::multiprecision::cpp_int c = 1;
    for (int j = 0; j <= n; ++j) {
        if (j > 0) {
            c = c * (n - j + 1) / j;
        }
        if (j >= k) {
            gamblekit::Rational term(c);
            for (int i = 0; i < j; ++i) term *= p;
            for (int i = 0; i < n - j; ++i) term *= (1 - p);
            total += term;
        }
    }
    return total;
}

inline std::vector<double> random_weights(std::mt19937_64& rng, int size) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> w(static_cast<std::size_t>(size));
    long double total = 0;
    for (double& x : w) {
        x = unif(rng);
        total += x;
    }
    for (double& x : w) {
        x = static_cast<double>(x / total);
    }
    return w;
}

// Random game in the general assumption with small-denominator rationals.
inline gamblekit::RationalParams random_rational_params(std::mt19937_64& rng, int max_n) {
    std::uniform_int_distribution<int> n_dist(1, max_n);
    std::uniform_int_distribution<int> den(1, 9);
    gamblekit::RationalParams r;
    r.n = n_dist(rng);
    while (true) {
        const int ud = den(rng);
        const int un = std::uniform_int_distribution<int>(ud, 3 * ud)(rng);
        const int dd = den(rng) + 1;
        const int dn = std::uniform_int_distribution<int>(1, dd)(rng);
        r.u = gamblekit::Rational(un, ud);
        r.d = gamblekit::Rational(dn, dd);
        if (r.u != r.d) {
            break;
        }
    }
    const int pd = den(rng) + 1;
    r.p = gamblekit::Rational(std::uniform_int_distribution<int>(1, pd - 1)(rng), pd);
    return r;
}

}  // namespace oracle
