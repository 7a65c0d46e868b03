#include <doctest.h>

#include <stdexcept>
#include <string>

#include "dmfprep/series.hpp"

using dmfprep::ConcFactor;

namespace {

ConcFactor cf(std::uint64_t k, int d) { return ConcFactor::make(k, d); }

}  // namespace

TEST_CASE("linear series") {
    const auto ts = dmfprep::linear_series(0.25, 0.25, 3, 2);
    REQUIRE(ts.size() == 3);
    CHECK(ts[0] == cf(1, 2));
    CHECK(ts[1] == cf(2, 2));
    CHECK(ts[2] == cf(3, 2));

    CHECK_THROWS_AS(dmfprep::linear_series(0.5, 0.3, 3, 4), std::domain_error);
    try {
        dmfprep::linear_series(0.5, 0.3, 3, 4);
    } catch (const std::domain_error& e) {
        // names the first offending 1-based index
        CHECK(std::string(e.what()).find("3") != std::string::npos);
    }
}

TEST_CASE("harmonic series") {
    const auto ts = dmfprep::harmonic_series(0.5, 3, 4);
    REQUIRE(ts.size() == 3);
    CHECK(ts[0] == cf(8, 4));
    CHECK(ts[1] == cf(4, 4));
    CHECK(ts[2] == cf(3, 4));  // 1/6 quantized at 1/16 grid
}

TEST_CASE("geometric series") {
    const auto ts = dmfprep::geometric_series(0.5, 0.5, 3, 4);
    REQUIRE(ts.size() == 3);
    CHECK(ts[0] == cf(8, 4));
    CHECK(ts[1] == cf(4, 4));
    CHECK(ts[2] == cf(2, 4));
    CHECK_THROWS_AS(dmfprep::geometric_series(0.8, 1.5, 3, 4),
                    std::domain_error);
}

TEST_CASE("parabolic series") {
    const auto ts = dmfprep::parabolic_series(0.25, 0.0625, 3, 4);
    REQUIRE(ts.size() == 3);
    CHECK(ts[0] == cf(4, 4));   // 0.25
    CHECK(ts[1] == cf(5, 4));   // 0.25 + 0.0625
    CHECK(ts[2] == cf(8, 4));   // 0.25 + 0.25
}

TEST_CASE("benchmark fixtures match their published denominators") {
    const auto ts1 = dmfprep::fixture_ts1();
    REQUIRE(ts1.size() == 7);
    CHECK(ts1[0] == cf(5, 4));
    CHECK(ts1[3] == ConcFactor::one());
    CHECK(ts1[6] == cf(5, 4));

    const auto ts2 = dmfprep::fixture_ts2();
    REQUIRE(ts2.size() == 7);
    CHECK(ts2[0] == cf(9, 5));
    CHECK(ts2[4] == ConcFactor::one());
    CHECK(ts2[6] == cf(22, 5));

    const auto ts3 = dmfprep::fixture_ts3();
    REQUIRE(ts3.size() == 4);
    CHECK(ts3[0] == cf(31, 6));
    CHECK(ts3[2] == ConcFactor::one());
    CHECK(ts3[3] == cf(51, 6));
}

TEST_CASE("random corpus is deterministic and respects its bounds") {
    dmfprep::CorpusOptions opt;
    opt.count = 25;
    opt.seed = 1234;
    const auto a = dmfprep::random_series_corpus(opt);
    const auto b = dmfprep::random_series_corpus(opt);
    REQUIRE(a.size() == 25);
    CHECK(a == b);
    for (const auto& ts : a) {
        CHECK(ts.size() >= static_cast<std::size_t>(opt.min_targets));
        CHECK(ts.size() <= static_cast<std::size_t>(opt.max_targets));
        for (const auto& t : ts) {
            CHECK(t.precision() <= opt.max_precision);
            CHECK(t >= ConcFactor::zero());
            CHECK(t <= ConcFactor::one());
        }
    }

    opt.seed = 99;
    CHECK(dmfprep::random_series_corpus(opt) != a);
}

TEST_CASE("family corpus has one instance per closed form") {
    const auto corpus = dmfprep::family_series_corpus();
    CHECK(corpus.size() == 5);
    for (const auto& ts : corpus) CHECK(!ts.empty());
}
