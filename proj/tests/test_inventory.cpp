#include <doctest.h>

#include "dmfprep/inventory.hpp"

using dmfprep::ConcFactor;
using dmfprep::Droplet;
using dmfprep::DropletSource;
using dmfprep::Inventory;

namespace {

Droplet d(std::uint64_t k, int prec, int tag = 0) {
    return {ConcFactor::make(k, prec), DropletSource::step_output(tag, 0)};
}

}  // namespace

TEST_CASE("store keeps insertion order, oldest first") {
    Inventory inv;
    inv.store(d(8, 4, 1));
    inv.store(d(4, 4, 2));
    inv.store(d(4, 4, 3));
    const auto all = inv.contents();
    REQUIRE(all.size() == 3);
    CHECK(all[0].cf == ConcFactor::make(8, 4));
    CHECK(all[1].cf == ConcFactor::make(4, 4));
    CHECK(all[2].cf == ConcFactor::make(4, 4));
    CHECK(inv.size() == 3);
    CHECK_FALSE(inv.empty());
}

TEST_CASE("take_exact removes the oldest droplet of that concentration") {
    Inventory inv;
    inv.store(d(4, 4, 1));
    inv.store(d(4, 4, 2));
    const auto got = inv.take_exact(ConcFactor::make(1, 2));
    REQUIRE(got.has_value());
    CHECK(got->source.step == 1);
    CHECK(inv.size() == 1);
    CHECK_FALSE(inv.take_exact(ConcFactor::make(1, 1)).has_value());
}

TEST_CASE("immediate higher finds the smallest strictly greater value") {
    Inventory inv;
    inv.store(d(8, 4, 1));
    inv.store(d(4, 4, 2));
    inv.store(d(4, 4, 3));

    const auto above_5 = inv.peek_immediate_higher(ConcFactor::make(5, 4));
    REQUIRE(above_5.has_value());
    CHECK(above_5->cf == ConcFactor::make(8, 4));

    const auto above_2 = inv.peek_immediate_higher(ConcFactor::make(2, 4));
    REQUIRE(above_2.has_value());
    CHECK(above_2->cf == ConcFactor::make(4, 4));
    CHECK(above_2->source.step == 2);  // oldest among equals

    CHECK_FALSE(
        inv.peek_immediate_higher(ConcFactor::make(8, 4)).has_value());
    CHECK(inv.size() == 3);  // peek does not remove

    const auto taken = inv.take_immediate_higher(ConcFactor::make(2, 4));
    REQUIRE(taken.has_value());
    CHECK(taken->source.step == 2);
    CHECK(inv.size() == 2);
}

TEST_CASE("no stored value above 7/8 when only 1/2 is held") {
    Inventory inv;
    inv.store(d(1, 1));
    CHECK_FALSE(inv.peek_immediate_higher(ConcFactor::make(7, 3)).has_value());
}

TEST_CASE("peak tracks the high-water mark") {
    Inventory inv;
    inv.store(d(8, 4, 1));
    inv.store(d(4, 4, 2));
    inv.take_exact(ConcFactor::make(1, 2));
    inv.store(d(2, 4, 3));
    CHECK(inv.peak() == 2);
    CHECK(inv.size() == 2);
}

TEST_CASE("bounded inventory evicts the oldest droplet") {
    Inventory inv(2);
    CHECK(inv.capacity() == 2);
    CHECK_FALSE(inv.store(d(8, 4, 1)).has_value());
    CHECK_FALSE(inv.store(d(4, 4, 2)).has_value());
    const auto evicted = inv.store(d(2, 4, 3));
    REQUIRE(evicted.has_value());
    CHECK(evicted->source.step == 1);
    CHECK(inv.size() == 2);
    CHECK(inv.peak() == 2);
}

TEST_CASE("distinct_values deduplicates and sorts ascending") {
    Inventory inv;
    inv.store(d(8, 4, 1));
    inv.store(d(4, 4, 2));
    inv.store(d(4, 4, 3));
    inv.store(d(12, 4, 4));
    const auto values = inv.distinct_values();
    REQUIRE(values.size() == 3);
    CHECK(values[0] == ConcFactor::make(1, 2));
    CHECK(values[1] == ConcFactor::make(1, 1));
    CHECK(values[2] == ConcFactor::make(3, 2));
    CHECK(inv.contains(ConcFactor::make(3, 2)));
    CHECK_FALSE(inv.contains(ConcFactor::make(5, 4)));
}
