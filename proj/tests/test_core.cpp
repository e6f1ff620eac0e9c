#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "gamblekit/game.hpp"
#include "gamblekit/numeric.hpp"
#include "gamblekit/rational_oracle.hpp"
#include "oracles.hpp"

using namespace gamblekit;

TEST_SUITE("core") {

TEST_CASE("compensated sum keeps low-order bits") {
    CompensatedSum s;
    s.add(1e16);
    s.add(1.0);
    s.add(-1e16);
    CHECK(s.value() == 1.0);
}

TEST_CASE("log binomial") {
    CHECK(log_binomial(10, 3) == doctest::Approx(std::log(120.0)).epsilon(1e-15));
    CHECK(log_binomial(5, 0) == 0.0);
    const LogBinomialTable t(40);
    CHECK(t.n() == 40);
    for (int k = 0; k <= 40; ++k) {
        CHECK(t(k) == doctest::Approx(log_binomial(40, k)).epsilon(1e-14));
    }
}

TEST_CASE("largest-first exp sum matches direct sum") {
    std::vector<double> logs;
    double direct = 0.0;
    for (int k = 0; k <= 30; ++k) {
        const double l = log_binomial(30, k) + 30 * std::log(0.5);
        logs.push_back(l);
        direct += std::exp(l);
    }
    logs.push_back(-INFINITY);
    const ScaledSum s = sum_exp_largest_first(logs);
    CHECK(s.value() == doctest::Approx(direct).epsilon(1e-15));
    CHECK(s.log_value() == doctest::Approx(std::log(direct)).epsilon(1e-14));
}

TEST_CASE("threshold index at the bar-room parameters") {
    const ThresholdIndex t = threshold_index(100, 1.5, 0.6);
    CHECK(t.k0 == 55);
    CHECK(t.ratio == doctest::Approx(55.749295065024).epsilon(1e-12));
    CHECK_FALSE(t.exact_boundary);
    CHECK(threshold_index(7, 1.5, 0.6).k0 == 3);
    CHECK(threshold_index(1, 1.5, 0.6).k0 == 0);
}

TEST_CASE("threshold index on exact boundaries") {
    // u^2 d^2 = 1: two heads in four rounds ends exactly level, which loses.
    const ThresholdIndex a = threshold_index(4, 2.0, 0.5);
    CHECK(a.k0 == 2);
    CHECK(a.exact_boundary);
    const ThresholdIndex b = threshold_index(3, 4.0, 0.5);
    CHECK(b.k0 == 1);
    CHECK(b.exact_boundary);
    const ThresholdIndex c = threshold_index(10, 1.5, 1.0);
    CHECK(c.k0 == 0);
    CHECK(c.exact_boundary);
    // 1.2^5 * (5/6)^5 = 1
    const ThresholdIndex e = threshold_index(10, 1.2, 5.0 / 6.0);
    CHECK(e.k0 == 5);
    CHECK(e.exact_boundary);
}

TEST_CASE("threshold index rejects the excluded factors") {
    CHECK_THROWS_AS(threshold_index(10, 1.5, 0.0), DomainError);
    CHECK_THROWS_AS(threshold_index(10, 1.5, 1.2), DomainError);
    CHECK_THROWS_AS(threshold_index(10, 0.9, 0.6), DomainError);
    CHECK_THROWS_AS(threshold_index(10, 1.0, 1.0), DomainError);
}

TEST_CASE("threshold agrees with an exact scan on a random rational grid") {
    std::mt19937_64 rng(20240611);
    for (int i = 0; i < 300; ++i) {
        const RationalParams r = oracle::random_rational_params(rng, 40);
        const GameParams g = r.to_game_params();
        INFO("n=" << r.n << " u=" << to_string(r.u) << " d=" << to_string(r.d));
        CHECK(threshold_index(r.n, g.u, g.d).k0 == exact_threshold(r.n, r.u, r.d));
    }
}

TEST_CASE("threshold agrees with a log scan on random real factors") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> up(1.0, 3.0), down(0.05, 1.0);
    for (int i = 0; i < 500; ++i) {
        const int n = 1 + static_cast<int>(rng() % 500);
        const double u = up(rng), d = down(rng);
        CHECK(threshold_index(n, u, d).k0 == oracle::scan_threshold(n, u, d));
    }
}

TEST_CASE("threshold is non-decreasing in n and non-increasing in u") {
    int prev = 0;
    for (int n = 1; n <= 300; ++n) {
        const int k0 = threshold_index(n, 1.5, 0.6).k0;
        CHECK(k0 >= prev);
        CHECK(k0 - prev <= 1);
        prev = k0;
    }
    prev = 1000;
    for (int i = 0; i <= 200; ++i) {
        const int k0 = threshold_index(100, 1.0 + i * 0.01, 0.6).k0;
        CHECK(k0 <= prev);
        prev = k0;
    }
}

TEST_CASE("win range outside the analysis assumptions") {
    const WinRange normal = win_range(100, 1.5, 0.6);
    CHECK(normal.lo == 56);
    CHECK(normal.hi == 100);
    // Both factors below one: never a win.
    CHECK(win_range(10, 0.9, 0.8).empty());
    // Both above one: every outcome wins.
    const WinRange all = win_range(10, 1.2, 1.1);
    CHECK(all.lo == 0);
    CHECK(all.hi == 10);
    // u < d < 1 < ... reversed roles: wins come from few heads.
    const WinRange rev = win_range(10, 0.5, 2.0);
    CHECK(rev.lo == 0);
    CHECK(rev.hi == 4);
    CHECK(win_range(10, 1.0, 1.0).empty());
}

TEST_CASE("final score and net profit") {
    GameParams g;
    g.stake = 100;
    CHECK(final_score(g, 55) == doctest::Approx(100 * std::pow(1.5, 55) * std::pow(0.6, 45)).epsilon(1e-12));
    CHECK(net_profit_given_heads(g, 55) == doctest::Approx(-49.67016399101452).epsilon(1e-12));
    CHECK(net_profit_given_heads(g, 56) == 100.0);
    CHECK(net_profit_given_heads(g, 0) == doctest::Approx(100 * (std::pow(0.6, 100) - 1)).epsilon(1e-15));
    g.payout_variant = PayoutVariant::TotalLoss;
    CHECK(net_profit_given_heads(g, 55) == -100.0);
    CHECK_THROWS_AS(net_profit_given_heads(g, -1), std::out_of_range);
    CHECK_THROWS_AS(net_profit_given_heads(g, 101), std::out_of_range);
}

TEST_CASE("level final score is a loss") {
    GameParams g;
    g.n = 4;
    g.u = 2.0;
    g.d = 0.5;
    CHECK(net_profit_given_heads(g, 2) == 0.0);
    CHECK(net_profit_given_heads(g, 3) == 1.0);
}

TEST_CASE("log final score stays finite past double range") {
    GameParams g;
    g.n = 5000;
    CHECK(std::isinf(final_score(g, 5000)));
    CHECK(log_final_score(g, 5000) == doctest::Approx(std::log(100.0) + 5000 * std::log(1.5)).epsilon(1e-14));
}

TEST_CASE("scores on either side of the threshold") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> up(1.0, 2.5), down(0.2, 1.0);
    for (int i = 0; i < 400; ++i) {
        GameParams g;
        g.n = 1 + static_cast<int>(rng() % 300);
        g.u = up(rng);
        g.d = down(rng);
        if (g.u == g.d) continue;
        const int k0 = threshold_index(g.n, g.u, g.d).k0;
        CHECK(final_score(g, k0) <= g.initial_score * (1 + 1e-9));
        if (k0 < g.n) {
            CHECK(final_score(g, k0 + 1) > g.initial_score * (1 - 1e-9));
        }
    }
}

TEST_CASE("score examples") {
    GameParams g;
    CHECK(final_score(g, 100) == doctest::Approx(100 * std::pow(1.5, 100)).epsilon(1e-12));
    CHECK(final_score(g, 0) == doctest::Approx(100 * std::pow(0.6, 100)).epsilon(1e-12));
    g.n = 2;
    CHECK(final_score(g, 1) == doctest::Approx(90.0).epsilon(1e-14));
}

TEST_CASE("score and profit are monotone in heads, profit linear in stake") {
    GameParams g;
    g.n = 150;
    GameParams big = g;
    big.stake = 250;
    for (int k = 1; k <= g.n; ++k) {
        CHECK(final_score(g, k) > final_score(g, k - 1));
        CHECK(net_profit_given_heads(g, k) >= net_profit_given_heads(g, k - 1));
        CHECK(net_profit_given_heads(big, k) == doctest::Approx(250 * net_profit_given_heads(g, k)).epsilon(1e-14));
    }
}

TEST_CASE("payout variant names") {
    CHECK(to_string(PayoutVariant::Proportional) == "proportional");
    CHECK(to_string(PayoutVariant::TotalLoss) == "total-loss");
    CHECK(parse_payout_variant("total-loss") == PayoutVariant::TotalLoss);
    CHECK(parse_payout_variant("proportional") == PayoutVariant::Proportional);
    CHECK_THROWS_AS(parse_payout_variant("half"), DomainError);
}

TEST_CASE("parameter validation") {
    GameParams g;
    CHECK_NOTHROW(validate_for_analysis(g));
    GameParams bad = g;
    bad.n = 0;
    CHECK_THROWS_AS(validate_for_analysis(bad), DomainError);
    bad = g;
    bad.p = 1.1;
    CHECK_THROWS_AS(validate_for_analysis(bad), DomainError);
    bad = g;
    bad.stake = -1;
    CHECK_THROWS_AS(validate_for_analysis(bad), DomainError);
    bad = g;
    bad.u = 0.9;
    CHECK_THROWS_AS(validate_for_analysis(bad), DomainError);
    CHECK_NOTHROW(validate_for_simulation(bad));
    bad.d = -0.1;
    CHECK_THROWS_AS(validate_for_simulation(bad), DomainError);
}

}  // TEST_SUITE
