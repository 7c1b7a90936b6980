#include <doctest.h>

#include "helpers.hpp"
#include "wmms/rational.hpp"

using namespace wmms;
using wmms::test::R;

TEST_SUITE_BEGIN("rational");

TEST_CASE("parse handles fractions, decimals and integers") {
    CHECK(Rational::parse("3/4") == R(3, 4));
    CHECK(Rational::parse("0.5") == R(1, 2));
    CHECK(Rational::parse("6/8") == R(3, 4));  // reduced
    CHECK(Rational::parse("6/8").num() == 3);
    CHECK(Rational::parse("6/8").den() == 4);
    CHECK(Rational::parse("3") == R(3));
    CHECK(Rational::parse("-3/4") == -R(3, 4));
    CHECK(Rational::parse("3/-4") == -R(3, 4));
    CHECK(Rational::parse(".25") == R(1, 4));
    CHECK(Rational::parse("2.") == R(2));
    CHECK(Rational::parse("0.125") == R(1, 8));
    CHECK(Rational::parse("10.25") == R(41, 4));
}

TEST_CASE("parse rejects malformed text") {
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1.2.3"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1e3"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("."), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/ 2"), std::invalid_argument);
}

TEST_CASE("format always emits p/q and round-trips") {
    CHECK(R(3, 4).str() == "3/4");
    CHECK(R(3).str() == "3/1");
    CHECK((-R(1, 2)).str() == "-1/2");
    CHECK(R(0).str() == "0/1");

    // Round-trip property over a deterministic sample.
    for (long num = -17; num <= 17; ++num)
        for (long den = 1; den <= 12; ++den) {
            Rational r(num, den);
            CHECK(Rational::parse(r.str()) == r);
        }
}

TEST_CASE("arithmetic is exact") {
    CHECK(R(1, 3) + R(1, 6) == R(1, 2));
    CHECK(R(1, 3) - R(1, 2) == -R(1, 6));
    CHECK(R(2, 3) * R(3, 4) == R(1, 2));
    CHECK(R(1, 3) / R(2, 9) == R(3, 2));
    CHECK_THROWS_AS(R(1) / R(0), std::domain_error);
    CHECK(R(1, 3) < R(1, 2));
    CHECK(R(-1, 2) < R(0));
    CHECK(abs(R(-3, 7)) == R(3, 7));
}

TEST_CASE("floor_log2") {
    CHECK(floor_log2(R(1)) == 0);
    CHECK(floor_log2(R(3, 2)) == 0);
    CHECK(floor_log2(R(2)) == 1);
    CHECK(floor_log2(R(1, 2)) == -1);
    CHECK(floor_log2(R(5, 16)) == -2);
    CHECK(floor_log2(R(1, 8)) == -3);
    CHECK_THROWS_AS(floor_log2(R(0)), std::domain_error);
}

TEST_CASE("dyadic predicates and rounding") {
    CHECK(is_dyadic_of(R(1, 4), R(1)));
    CHECK(is_dyadic_of(R(3, 8), R(3, 4)));
    CHECK(is_dyadic_of(R(3, 4), R(3, 4)));  // p = 0 is admissible
    CHECK_FALSE(is_dyadic_of(R(1, 3), R(1)));
    CHECK_FALSE(is_dyadic_of(R(2), R(1)));  // above the base
    CHECK_FALSE(is_dyadic_of(R(0), R(1)));

    CHECK(round_up_pow_half(R(3, 5), R(3, 5)) == R(3, 5));
    CHECK(round_up_pow_half(R(2, 5), R(3, 5)) == R(3, 5));
    CHECK(round_up_pow_half(R(1, 3), R(1)) == R(1, 2));
    CHECK(round_up_pow_half(R(1, 4), R(1)) == R(1, 4));

    CHECK(round_down_pow_half(R(5, 16), R(1)) == R(1, 4));
    CHECK(round_down_pow_half(R(3, 16), R(1)) == R(1, 8));
    CHECK(round_down_pow_half(R(1, 2), R(1)) == R(1, 2));

    // Bracket property on a sample grid.
    for (long num = 1; num <= 40; ++num) {
        Rational v(num, 40);
        Rational up = round_up_pow_half(v, R(1));
        CHECK(v <= up);
        CHECK(up < R(2) * v);
        Rational down = round_down_pow_half(v, R(1));
        CHECK(down <= v);
        CHECK(R(2) * down > v);
    }
}

TEST_CASE("dyadic expansion") {
    auto terms = dyadic_expansion(R(3, 16), R(1));
    REQUIRE(terms.size() == 2);
    CHECK(terms[0] == R(1, 8));
    CHECK(terms[1] == R(1, 16));
    CHECK(dyadic_expansion(R(0), R(1)).empty());
    auto unit = dyadic_expansion(R(1), R(1));
    REQUIRE(unit.size() == 1);
    CHECK(unit[0] == R(1));
    CHECK_THROWS_AS(dyadic_expansion(R(1, 3), R(1)), std::invalid_argument);

    auto mixed = dyadic_expansion(R(7, 16), R(1, 2));  // base 1/2: 7/16 = 1/4 + 1/8 + 1/16
    Rational sum;
    for (const auto& t : mixed) {
        CHECK(is_dyadic_of(t, R(1, 2)));
        sum += t;
    }
    CHECK(sum == R(7, 16));
}

TEST_SUITE_END();
