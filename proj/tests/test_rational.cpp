#include <catch2/catch_amalgamated.hpp>

#include <sqnl/errors.hpp>
#include <sqnl/rational.hpp>

using sqnl::Rational;

TEST_CASE("rational construction reduces to canonical form", "[rational]") {
    REQUIRE(Rational(2, 4) == Rational(1, 2));
    REQUIRE(Rational(-2, 4) == Rational(-1, 2));
    REQUIRE(Rational(2, -4) == Rational(-1, 2));
    REQUIRE(Rational(0, 7) == Rational(0));
    REQUIRE(Rational(6, 3).is_integer());
    REQUIRE_FALSE(Rational(1, 3).is_integer());
    REQUIRE_THROWS_AS(Rational(1, 0), sqnl::domain_error);
}

TEST_CASE("rational arithmetic", "[rational]") {
    REQUIRE(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    REQUIRE(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
    REQUIRE(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
    REQUIRE(Rational(1, 2) / Rational(1, 4) == Rational(2));
    REQUIRE(-Rational(3, 7) == Rational(-3, 7));
    REQUIRE_THROWS_AS(Rational(1) / Rational(0), sqnl::domain_error);

    Rational acc(0);
    for (int i = 0; i < 8; ++i) acc += Rational(1, 8);
    REQUIRE(acc == Rational(1));
}

TEST_CASE("rational comparisons are exact", "[rational]") {
    REQUIRE(Rational(1, 3) < Rational(1, 2));
    REQUIRE(Rational(-1, 2) < Rational(-1, 3));
    REQUIRE(Rational(7, 3) > Rational(2));
    REQUIRE(Rational(1, 2) <= Rational(1, 2));
    REQUIRE(Rational(10, 5) == Rational(2));
}

TEST_CASE("floor rounds toward negative infinity", "[rational]") {
    REQUIRE(Rational(7, 2).floor() == 3);
    REQUIRE(Rational(-7, 2).floor() == -4);
    REQUIRE(Rational(-1, 8).floor() == -1);
    REQUIRE(Rational(5).floor() == 5);
    REQUIRE(Rational(16383, 256).floor() == 63);
}

TEST_CASE("round half away from zero", "[rational]") {
    REQUIRE(Rational(1, 2).round_half_away() == 1);
    REQUIRE(Rational(-1, 2).round_half_away() == -1);
    REQUIRE(Rational(3, 2).round_half_away() == 2);
    REQUIRE(Rational(-3, 2).round_half_away() == -2);
    REQUIRE(Rational(1, 3).round_half_away() == 0);
    REQUIRE(Rational(-1, 3).round_half_away() == 0);
    REQUIRE(Rational(5).round_half_away() == 5);
}

TEST_CASE("string and double views", "[rational]") {
    REQUIRE(Rational(135, 4).to_string() == "135/4");
    REQUIRE(Rational(-93, 32).to_string() == "-93/32");
    REQUIRE(Rational(24).to_string() == "24");
    REQUIRE(Rational(1, 2).to_double() == 0.5);
    REQUIRE(Rational(-93, 32).to_double() == -2.90625);
    REQUIRE(Rational(7, 3).abs() == Rational(7, 3));
    REQUIRE(Rational(-7, 3).abs() == Rational(7, 3));
}

TEST_CASE("wide intermediates reduce instead of overflowing", "[rational]") {
    // Near the 63-bit edge: (3/2^40) * (2^40/3) must come back to 1.
    const std::int64_t big = std::int64_t{1} << 40;
    REQUIRE(Rational(3, big) * Rational(big, 3) == Rational(1));
    // Sum with huge common denominators stays canonical.
    Rational a(1, std::int64_t{1} << 30), b(1, std::int64_t{1} << 31);
    REQUIRE(a + b == Rational(3, std::int64_t{1} << 31));
}
