#include <doctest.h>

#include "dmfprep/baseline.hpp"
#include "dmfprep/emdp.hpp"
#include "dmfprep/executor.hpp"
#include "dmfprep/oracle.hpp"

using dmfprep::ConcFactor;
using dmfprep::min_cost_plan;
using dmfprep::Objective;
using dmfprep::OracleVerdict;
using dmfprep::SearchCaps;

namespace {

ConcFactor cf(std::uint64_t k, int d) { return ConcFactor::make(k, d); }

dmfprep::PlanStats checked_stats(const dmfprep::Plan& plan) {
    const auto trace = dmfprep::execute(plan);
    REQUIRE(trace.violations.empty());
    REQUIRE(dmfprep::check_conservation(trace).ok);
    return trace.stats;
}

}  // namespace

TEST_CASE("midpoint needs exactly one mix") {
    const auto res = min_cost_plan({cf(1, 1)});
    REQUIRE(res.found());
    const auto s = checked_stats(*res.plan);
    CHECK(s.steps == 1);
    CHECK(s.samples == 1);
    CHECK(s.buffers == 1);
}

TEST_CASE("3/4 takes two mixes and two samples") {
    const auto res = min_cost_plan({cf(3, 2)});
    REQUIRE(res.found());
    const auto s = checked_stats(*res.plan);
    CHECK(s.steps == 2);
    CHECK(s.samples == 2);

    const auto by_steps =
        min_cost_plan({cf(3, 2)}, {}, Objective::StepsThenSamples);
    REQUIRE(by_steps.found());
    CHECK(checked_stats(*by_steps.plan).steps == 2);
}

TEST_CASE("reservoir targets dispense with zero steps") {
    const auto res = min_cost_plan({ConcFactor::one(), ConcFactor::zero()});
    REQUIRE(res.found());
    const auto s = checked_stats(*res.plan);
    CHECK(s.steps == 0);
    CHECK(s.samples == 1);
    CHECK(s.buffers == 1);
}

TEST_CASE("duplicate midpoints share a single split") {
    const auto res = min_cost_plan({cf(1, 1), cf(1, 1)});
    REQUIRE(res.found());
    const auto s = checked_stats(*res.plan);
    CHECK(s.steps == 1);
    CHECK(s.samples == 1);
    CHECK(s.waste == 0);
}

TEST_CASE("single-target minimum step count equals the precision") {
    for (int d = 1; d <= 3; ++d) {
        for (std::uint64_t k = 1; k < (std::uint64_t{1} << d); k += 2) {
            const auto res = min_cost_plan({cf(k, d)});
            REQUIRE(res.found());
            CHECK(checked_stats(*res.plan).steps == d);
        }
    }
}

TEST_CASE("the admissible bounds never change the optimum") {
    std::vector<dmfprep::TargetSeries> instances = {
        {cf(1, 2), cf(3, 2)},
        {cf(3, 3), cf(5, 3)},
        {cf(7, 3)},
        {cf(1, 3), cf(1, 3), cf(1, 1)},
    };
    for (const auto& ts : instances) {
        // blind search needs tight caps to stay enumerable
        SearchCaps with, without;
        with.max_steps = without.max_steps = 5;
        with.max_precision = without.max_precision = 4;
        with.max_droplets = without.max_droplets = 4;
        without.use_heuristic = false;
        const auto a = min_cost_plan(ts, with);
        const auto b = min_cost_plan(ts, without);
        REQUIRE(a.found());
        REQUIRE(b.found());
        const auto sa = checked_stats(*a.plan);
        const auto sb = checked_stats(*b.plan);
        CHECK(sa.samples == sb.samples);
        CHECK(sa.steps == sb.steps);
    }
}

TEST_CASE("search is deterministic") {
    const dmfprep::TargetSeries ts = {cf(3, 3), cf(5, 3)};
    const auto a = min_cost_plan(ts);
    const auto b = min_cost_plan(ts);
    REQUIRE(a.found());
    REQUIRE(b.found());
    CHECK(*a.plan == *b.plan);
}

TEST_CASE("too-tight caps make the search infeasible, not wrong") {
    SearchCaps caps;
    caps.max_steps = 2;
    const auto res = min_cost_plan({cf(1, 4)}, caps);
    CHECK(res.verdict == OracleVerdict::Infeasible);
    CHECK_FALSE(res.plan.has_value());
}

TEST_CASE("a state budget of one gives up as unknown") {
    SearchCaps caps;
    caps.max_states = 1;
    const auto res = min_cost_plan({cf(5, 4), cf(11, 4)}, caps);
    CHECK(res.verdict == OracleVerdict::Unknown);
}

TEST_CASE("gap audit accepts the greedy planner on tiny instances") {
    std::vector<dmfprep::TargetSeries> instances = {
        {cf(1, 1)}, {cf(3, 2)}, {cf(1, 2), cf(3, 2)}, {cf(1, 1), cf(1, 1)},
    };
    const auto rows = dmfprep::optimality_gap(
        [](const dmfprep::TargetSeries& ts) {
            return dmfprep::EmdpPlanner(ts).run();
        },
        instances);
    REQUIRE(rows.size() == instances.size());
    for (const auto& row : rows) {
        REQUIRE(row.verdict == OracleVerdict::Found);
        REQUIRE(row.oracle.has_value());
        CHECK(row.planner.samples >= row.oracle->samples);
    }
}

TEST_CASE("gap audit reports the no-sharing baseline's overshoot") {
    const auto rows = dmfprep::optimality_gap(
        [](const dmfprep::TargetSeries& ts) {
            return dmfprep::naive_multi(ts);
        },
        {{cf(1, 1), cf(1, 1)}});
    REQUIRE(rows.size() == 1);
    REQUIRE(rows[0].verdict == OracleVerdict::Found);
    CHECK(rows[0].planner.samples - rows[0].oracle->samples >= 1);
}
