#include <doctest.h>

#include <random>

#include "gamblekit/analysis.hpp"
#include "gamblekit/rational_oracle.hpp"
#include "oracles.hpp"

using namespace gamblekit;

TEST_SUITE("oracle") {

TEST_CASE("rational literals") {
    CHECK(parse_rational("3/2") == Rational(3, 2));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK(parse_rational("0.6") == Rational(3, 5));
    CHECK(parse_rational("1.25e-1") == Rational(1, 8));
    CHECK(parse_rational(" 2E2 ") == Rational(200));
    CHECK(parse_rational(".5") == Rational(1, 2));
    CHECK_THROWS_AS(parse_rational("sqrt(2)"), DomainError);
    CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
    CHECK_THROWS_AS(parse_rational(""), DomainError);
    CHECK_THROWS_AS(parse_rational("1.2.3"), DomainError);
    CHECK(to_string(Rational(6, 4)) == "3/2");
}

TEST_CASE("exact values for one and two rounds") {
    RationalParams r;
    r.n = 1;
    const ExactMoments one = exact_rational_oracle(r);
    CHECK(one.g == Rational(3, 10));
    CHECK(one.variance == Rational(49, 100));
    r.n = 2;
    CHECK(exact_rational_oracle(r).g == Rational(1, 25));
    r.n = 1;
    r.payout_variant = PayoutVariant::TotalLoss;
    CHECK(exact_rational_oracle(r).g == 0);
    CHECK(exact_rational_oracle(r).variance == 1);
}

TEST_CASE("exact threshold on a level boundary") {
    CHECK(exact_threshold(4, Rational(2), Rational(1, 2)) == 2);
    CHECK(exact_threshold(100, Rational(3, 2), Rational(3, 5)) == 55);
}

TEST_CASE("floating analysis agrees with the exact oracle") {
    std::mt19937_64 rng(777);
    for (int i = 0; i < 60; ++i) {
        RationalParams r = oracle::random_rational_params(rng, kOracleMaxRounds);
        r.payout_variant = i % 5 == 4 ? PayoutVariant::TotalLoss : PayoutVariant::Proportional;
        const GameParams g = r.to_game_params();
        const ExactMoments exact = exact_rational_oracle(r);
        const ProfitAnalysis pa = expected_net_profit(g);
        INFO("n=" << r.n << " u=" << to_string(r.u) << " d=" << to_string(r.d) << " p=" << to_string(r.p));
        CHECK(pa.threshold.k0 == exact.k0);
        CHECK(std::abs(pa.g - to_double(exact.g)) < 1e-10);
        const double var = g.payout_variant == PayoutVariant::Proportional ? variance_report(g).variance
                                                                           : total_loss_variance(g);
        CHECK(std::abs(var - to_double(exact.variance)) < 1e-9);
    }
}

TEST_CASE("oracle input checks") {
    RationalParams r;
    r.n = kOracleMaxRounds + 1;
    CHECK_THROWS_AS(exact_rational_oracle(r), DomainError);
    r.n = 3;
    r.u = 1;
    r.d = 1;
    CHECK_THROWS_AS(exact_rational_oracle(r), DomainError);
    r.u = Rational(3, 2);
    r.d = Rational(3, 5);
    r.p = Rational(3, 2);
    CHECK_THROWS_AS(exact_rational_oracle(r), DomainError);
}

}  // TEST_SUITE
