#include <doctest.h>

#include "frfbands/frequency_grid.hpp"

using namespace frfbands;

TEST_CASE("decimal parsing produces exact rationals") {
    CHECK(parse_decimal("0.05") == Rational(1, 20));
    CHECK(parse_decimal("2.2") == Rational(11, 5));
    CHECK(parse_decimal("22") == Rational(22, 1));
    CHECK(parse_decimal(" 1.35 ") == Rational(27, 20));
    CHECK(parse_decimal("0.000001") == Rational(1, 1000000));
}

TEST_CASE("decimal parsing rejects non-decimal text") {
    CHECK_THROWS_AS(parse_decimal("1e-3"), ValidationError);
    CHECK_THROWS_AS(parse_decimal("-0.5"), ValidationError);
    CHECK_THROWS_AS(parse_decimal("abc"), ValidationError);
    CHECK_THROWS_AS(parse_decimal("1.2.3"), ValidationError);
    CHECK_THROWS_AS(parse_decimal(""), ValidationError);
    CHECK_THROWS_AS(parse_decimal("."), ValidationError);
}

TEST_CASE("rational arithmetic") {
    const Rational a(1, 20), b(3, 20);
    CHECK(a + b == Rational(1, 5));
    CHECK(a * Rational(100, 1) == Rational(5, 1));
    CHECK(rational_gcd(a, b) == Rational(1, 20));
    CHECK(rational_gcd(Rational(1, 2), Rational(3, 2)) == Rational(1, 2));
    CHECK(Rational(1, 20).inverse() == Rational(20, 1));
    CHECK_THROWS_AS(Rational(1, 0), ValidationError);
    CHECK_THROWS_AS(Rational(0, 1).inverse(), ValidationError);
}

TEST_CASE("standard posture grid") {
    const auto grid = FrequencyGrid::standard_posture_grid();
    REQUIRE(grid.size() == 11);
    CHECK(grid.freq(0) == doctest::Approx(0.05));
    CHECK(grid.max_freq() == doctest::Approx(2.2));
    // scaling every frequency by 100 gives integers {5,...,220} with gcd 5
    CHECK(grid.gcd() == Rational(1, 20));
}

TEST_CASE("grid invariants are enforced") {
    CHECK_THROWS_AS(FrequencyGrid::from_decimal_text("0.3,0.2"), ValidationError);
    CHECK_THROWS_AS(FrequencyGrid::from_decimal_text("0.1,0.1"), ValidationError);
    CHECK_THROWS_AS(FrequencyGrid::from_decimal_text("0,0.1"), ValidationError);
    CHECK_THROWS_AS(FrequencyGrid::from_decimal_text(""), ValidationError);
}

TEST_CASE("grid equality is exact") {
    const auto a = FrequencyGrid::from_decimal_text("0.05,0.15");
    const auto b = FrequencyGrid::from_decimal_text("0.050,0.150");
    const auto c = FrequencyGrid::from_rationals({Rational(1, 20), Rational(3, 20)});
    CHECK(a == b);
    CHECK(a == c);
    CHECK(a != FrequencyGrid::from_decimal_text("0.05,0.2"));
}
