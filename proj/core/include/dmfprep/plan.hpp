#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dmfprep/conc_factor.hpp"

namespace dmfprep {

// Where a droplet fed into a mix came from.
struct DropletSource {
    enum class Kind { Sample, Buffer, StepOutput };

    Kind kind = Kind::Sample;
    int step = -1;    // producing step id (1-based) when kind == StepOutput
    int output = -1;  // 0 or 1

    static DropletSource sample() { return {Kind::Sample, -1, -1}; }
    static DropletSource buffer() { return {Kind::Buffer, -1, -1}; }
    static DropletSource step_output(int step, int output) {
        return {Kind::StepOutput, step, output};
    }

    bool operator==(const DropletSource&) const = default;
};

// What happens to one of the two droplets a mix produces.
struct Disposition {
    enum class Kind { Target, Store, Waste };

    Kind kind = Kind::Store;
    int target = -1;  // target index when kind == Target

    static Disposition to_target(int i) { return {Kind::Target, i}; }
    static Disposition store() { return {Kind::Store, -1}; }
    static Disposition waste() { return {Kind::Waste, -1}; }

    bool operator==(const Disposition&) const = default;
};

// One mix-split operation: combine two unit droplets, split the result
// back into two unit droplets of the averaged concentration.
struct PlanStep {
    int id = 0;  // 1-based, unique, referenced by DropletSource::step
    DropletSource in_a;
    DropletSource in_b;
    ConcFactor out_cf;
    std::array<Disposition, 2> outs{Disposition::store(), Disposition::store()};

    bool operator==(const PlanStep&) const = default;
};

// A target satisfied straight from a reservoir (concentration 0 or 1).
struct DirectDispense {
    int target_index = -1;
    DropletSource source;  // Sample or Buffer

    bool operator==(const DirectDispense&) const = default;
};

struct Plan {
    std::vector<ConcFactor> targets;
    std::vector<PlanStep> steps;
    std::vector<DirectDispense> direct;

    bool operator==(const Plan&) const = default;
};

// Resource totals, always derived by executing the plan.
struct PlanStats {
    int samples = 0;
    int buffers = 0;
    int waste = 0;
    int steps = 0;
    int peak_storage = 0;

    bool operator==(const PlanStats&) const = default;

    std::string line() const {
        return "S=" + std::to_string(samples) + " B=" + std::to_string(buffers) +
               " W=" + std::to_string(waste) + " steps=" + std::to_string(steps) +
               " peak=" + std::to_string(peak_storage);
    }
};

// A concrete droplet sitting in storage.
struct Droplet {
    ConcFactor cf;
    DropletSource source;

    bool operator==(const Droplet&) const = default;
};

}  // namespace dmfprep
