#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dmfprep/plan.hpp"

namespace dmfprep {

struct Violation {
    int step_id = 0;  // 0 = plan-level
    std::string message;
};

struct StepTrace {
    int id = 0;
    ConcFactor in_a;
    ConcFactor in_b;
    ConcFactor out;
    int storage_after = 0;
};

// Result of replaying a plan on a virtual chip.  The stats here are the
// single source of truth for all reported costs.
struct ExecutionTrace {
    PlanStats stats;
    std::vector<Violation> violations;
    std::vector<StepTrace> step_traces;
    int targets_satisfied = 0;
    // sample mass over all terminal droplets (targets + waste), exact
    std::uint64_t terminal_mass_num = 0;
    int mass_precision = 0;

    bool ok() const { return violations.empty(); }
};

struct ConservationVerdict {
    bool ok = false;
    std::string detail;
};

// Replays the plan step by step: inputs must be live, out_cf must equal the
// exact mix of the inputs, targets must be satisfied exactly once each.
// Total: always returns a trace, reporting problems as violations.
ExecutionTrace execute(const Plan& plan);

// Exact droplet-count and sample-mass balance over a clean trace.
ConservationVerdict check_conservation(const ExecutionTrace& trace);

}  // namespace dmfprep
