#include <doctest.h>

#include <stdexcept>

#include "dmfprep/conc_factor.hpp"

using dmfprep::ConcFactor;
using dmfprep::complement;
using dmfprep::doubled;
using dmfprep::mix;

TEST_CASE("construction canonicalizes to an odd numerator") {
    CHECK(ConcFactor::make(8, 4) == ConcFactor::make(1, 1));
    CHECK(ConcFactor::make(8, 4).str() == "1/2");
    CHECK(ConcFactor::make(6, 4).str() == "3/8");
    CHECK(ConcFactor::make(5, 4).numerator() == 5);
    CHECK(ConcFactor::make(5, 4).precision() == 4);
    CHECK(ConcFactor::make(0, 7).is_zero());
    CHECK(ConcFactor::make(0, 7).precision() == 0);
    CHECK(ConcFactor::make(128, 7).is_one());
    CHECK(ConcFactor::zero().str() == "0");
    CHECK(ConcFactor::one().str() == "1");
}

TEST_CASE("construction rejects out-of-range inputs") {
    CHECK_THROWS_AS(ConcFactor::make(17, 4), std::invalid_argument);
    CHECK_THROWS_AS(ConcFactor::make(1, 31), std::invalid_argument);
    CHECK_THROWS_AS(ConcFactor::make(1, -1), std::invalid_argument);
    CHECK_NOTHROW(ConcFactor::make(1, 30));
}

TEST_CASE("value ordering is independent of representation") {
    CHECK(ConcFactor::make(1, 2) < ConcFactor::make(1, 1));
    CHECK(ConcFactor::make(5, 4) < ConcFactor::make(3, 3));  // 5/16 < 6/16
    CHECK(ConcFactor::make(1, 1) == ConcFactor::make(2, 2));
    CHECK(ConcFactor::make(3, 2) > ConcFactor::make(1, 1));
    CHECK(ConcFactor::zero() < ConcFactor::make(1, 30));
    CHECK(ConcFactor::make(1, 30) < ConcFactor::one());
}

TEST_CASE("mix averages exactly") {
    CHECK(mix(ConcFactor::one(), ConcFactor::zero()) == ConcFactor::make(1, 1));
    CHECK(mix(ConcFactor::make(8, 4), ConcFactor::make(4, 4)) ==
          ConcFactor::make(6, 4));
    CHECK(mix(ConcFactor::make(16, 4), ConcFactor::make(6, 4)) ==
          ConcFactor::make(11, 4));
    CHECK(mix(ConcFactor::make(2, 4), ConcFactor::make(8, 4)) ==
          ConcFactor::make(5, 4));
    // commutative
    CHECK(mix(ConcFactor::make(3, 3), ConcFactor::make(1, 2)) ==
          mix(ConcFactor::make(1, 2), ConcFactor::make(3, 3)));
}

TEST_CASE("complement solves mix(h, c) == t when feasible") {
    const auto t = ConcFactor::make(5, 4);
    const auto h = ConcFactor::make(8, 4);
    const auto c = complement(t, h);
    REQUIRE(c.has_value());
    CHECK(*c == ConcFactor::make(2, 4));
    CHECK(mix(h, *c) == t);

    // complement of t with itself is t
    CHECK(*complement(t, t) == t);

    // 2t - h below zero is infeasible
    CHECK_FALSE(complement(ConcFactor::make(2, 4), ConcFactor::make(8, 4))
                    .has_value());
    // 2t - h above one is infeasible
    CHECK_FALSE(complement(ConcFactor::make(15, 4), ConcFactor::make(1, 4))
                    .has_value());
}

TEST_CASE("doubled stays within [0, 1]") {
    CHECK(*doubled(ConcFactor::make(5, 4)) == ConcFactor::make(5, 3));
    CHECK(*doubled(ConcFactor::make(1, 1)) == ConcFactor::one());
    CHECK(*doubled(ConcFactor::zero()) == ConcFactor::zero());
    CHECK_FALSE(doubled(ConcFactor::one()).has_value());
    CHECK_FALSE(doubled(ConcFactor::make(3, 2)).has_value());
}

TEST_CASE("quantize rounds to the nearest grid point, ties upward") {
    CHECK(ConcFactor::quantize(0.5, 4) == ConcFactor::make(8, 4));
    CHECK(ConcFactor::quantize(0.3, 4) == ConcFactor::make(5, 4));
    CHECK(ConcFactor::quantize(1.0, 6) == ConcFactor::one());
    CHECK(ConcFactor::quantize(0.0, 6) == ConcFactor::zero());
    // 0.15625 == 2.5/16: tie rounds up to 3/16
    CHECK(ConcFactor::quantize(0.15625, 4) == ConcFactor::make(3, 4));
    CHECK_THROWS_AS(ConcFactor::quantize(-0.1, 4), std::domain_error);
    CHECK_THROWS_AS(ConcFactor::quantize(1.1, 4), std::domain_error);
}

TEST_CASE("parse accepts fractions, reservoirs, and decimals") {
    CHECK(ConcFactor::parse("5/16") == ConcFactor::make(5, 4));
    CHECK(ConcFactor::parse(" 14/16 ") == ConcFactor::make(7, 3));
    CHECK(ConcFactor::parse("16/16") == ConcFactor::one());
    CHECK(ConcFactor::parse("0/8") == ConcFactor::zero());
    CHECK(ConcFactor::parse("0") == ConcFactor::zero());
    CHECK(ConcFactor::parse("1") == ConcFactor::one());
    CHECK(ConcFactor::parse("0.3125", 4) == ConcFactor::make(5, 4));
    CHECK(ConcFactor::parse("0.3", 4) == ConcFactor::make(5, 4));

    CHECK_THROWS_AS(ConcFactor::parse("5/12"), std::invalid_argument);
    CHECK_THROWS_AS(ConcFactor::parse("17/16"), std::invalid_argument);
    CHECK_THROWS_AS(ConcFactor::parse("0.5"), std::invalid_argument);
    CHECK_THROWS_AS(ConcFactor::parse("abc"), std::invalid_argument);
    CHECK_THROWS_AS(ConcFactor::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(ConcFactor::parse("2"), std::invalid_argument);
}

TEST_CASE("renderings: canonical and fixed-denominator") {
    CHECK(ConcFactor::make(14, 4).str() == "7/8");
    CHECK(ConcFactor::make(14, 4).str_at(4) == "14/16");
    CHECK(ConcFactor::one().str_at(4) == "16/16");
    CHECK(ConcFactor::zero().str_at(3) == "0/8");
    CHECK(ConcFactor::make(5, 4).popcount() == 2);
    CHECK(ConcFactor::make(5, 4).numerator_at(6) == 20);
    CHECK_THROWS_AS(ConcFactor::make(5, 4).numerator_at(3),
                    std::invalid_argument);
}

TEST_CASE("packed keys are distinct across canonical values") {
    // packed order is not value order; it only needs to be injective
    CHECK(ConcFactor::make(1, 1).packed() != ConcFactor::make(1, 2).packed());
    CHECK(ConcFactor::make(5, 4).packed() ==
          ConcFactor::parse("5/16").packed());
    CHECK(ConcFactor::zero().packed() != ConcFactor::one().packed());
}

TEST_CASE("mix of complements round-trips across the value range") {
    for (std::uint64_t k = 0; k <= 16; ++k) {
        const auto t = ConcFactor::make(k, 4);
        for (std::uint64_t j = 0; j <= 16; ++j) {
            const auto h = ConcFactor::make(j, 4);
            const auto c = complement(t, h);
            if (c) CHECK(mix(h, *c) == t);
        }
    }
}
