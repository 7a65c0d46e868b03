#pragma once

#include <string>

#include "dmfprep/plan.hpp"

namespace dmfprep {

// Graphviz text for a plan: ellipse nodes for droplets (sources, outputs,
// direct dispenses), boxes for mix steps.  Output is byte-stable for a
// given plan.
std::string plan_to_dot(const Plan& plan);

}  // namespace dmfprep
