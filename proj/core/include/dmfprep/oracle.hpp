#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dmfprep/plan.hpp"
#include "dmfprep/series.hpp"

namespace dmfprep {

struct SearchCaps {
    int max_steps = 24;
    int max_droplets = 6;  // concurrent held droplets, bounds branching
    int max_precision = 10;
    double budget_seconds = 60.0;
    std::uint64_t max_states = 5'000'000;
    bool use_heuristic = true;  // denominator-growth lower bound on steps
};

enum class Objective { SamplesThenSteps, StepsThenSamples };

enum class OracleVerdict { Found, Infeasible, Unknown };

struct OracleResult {
    OracleVerdict verdict = OracleVerdict::Unknown;
    std::optional<Plan> plan;  // set iff verdict == Found
    std::uint64_t expanded = 0;

    bool found() const { return verdict == OracleVerdict::Found; }
};

// Provably minimum-cost plan under the lexicographic objective, searched
// exhaustively over mix actions on any two held or reservoir droplets.
// Infeasible = exhausted the capped space; Unknown = ran out of budget.
// Deterministic: ties broken by ascending (cf_a, cf_b) action order.
OracleResult min_cost_plan(const TargetSeries& targets,
                           const SearchCaps& caps = {},
                           Objective objective = Objective::SamplesThenSteps);

struct GapRow {
    TargetSeries targets;
    PlanStats planner;
    std::optional<PlanStats> oracle;  // set iff verdict == Found
    OracleVerdict verdict = OracleVerdict::Unknown;
};

// Runs planner and oracle over each instance; throws std::logic_error if a
// planner ever beats a Found oracle cost (that would disprove minimality).
// Unknown/Infeasible rows are reported, not asserted.
std::vector<GapRow> optimality_gap(
    const std::function<Plan(const TargetSeries&)>& planner,
    const std::vector<TargetSeries>& instances, const SearchCaps& caps = {},
    Objective objective = Objective::SamplesThenSteps);

}  // namespace dmfprep
