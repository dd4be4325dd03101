#include <catch2/catch_amalgamated.hpp>

#include "cpbp/rational.hpp"

using namespace cpbp;

TEST_CASE("rational parsing forms") {
    CHECK(parse_rat("5") == Rat(5));
    CHECK(parse_rat("-3") == Rat(-3));
    CHECK(parse_rat("25/3") == rat(25, 3));
    CHECK(parse_rat("64725/1000") == rat(2589, 40));
    CHECK(parse_rat("64.725") == rat(2589, 40));
    CHECK(parse_rat("0.5") == rat(1, 2));
    CHECK(parse_rat("-0.25") == rat(-1, 4));
    CHECK_THROWS_AS(parse_rat(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rat("abc"), std::invalid_argument);
}

TEST_CASE("two-argument construction is canonicalized") {
    CHECK(rat(952, 2) == Rat(476));
    CHECK(rat(6, 4) == rat(3, 2));
    CHECK(rat_str(rat(6, 4)) == "3/2");
    CHECK(rat_str(rat(8, 2)) == "4");
}

TEST_CASE("decimal rendering") {
    CHECK(decimal_str(Rat(7)) == "7");
    CHECK(decimal_str(rat(25, 2)) == "12.5");
    CHECK(decimal_str(rat(53, 5)) == "10.6");
    CHECK(decimal_str(rat(25, 3)) == "8.(3)");
    CHECK(decimal_str(rat(32, 3)) == "10.(6)");
    CHECK(decimal_str(rat(1, 7)) == "0.(142857)");
    CHECK(decimal_str(rat(-25, 3)) == "-8.(3)");
    CHECK(decimal_str(rat(54, 5)) == "10.8");
    CHECK(decimal_str(rat(1, 6)) == "0.1(6)");
}

TEST_CASE("six-decimal companion") {
    CHECK(decimal6_str(rat(2589, 40)) == "64.725000");
    CHECK(decimal6_str(rat(1, 3)) == "0.333333");
    CHECK(decimal6_str(rat(-1, 3)) == "-0.333333");
    CHECK(decimal6_str(Rat(0)) == "0.000000");
}

TEST_CASE("binomial helper") {
    CHECK(binom(8, 2) == 28);
    CHECK(binom(20, 4) == 4845);
    CHECK(binom(3, 5) == 0);
}
