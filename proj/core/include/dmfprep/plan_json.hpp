#pragma once

#include <string>

#include "dmfprep/plan.hpp"

namespace dmfprep {

// Versioned JSON plan document.  Rendering embeds a stats block recomputed
// by the executor; parsing ignores it (stats are always derived, never
// trusted from a file).  parse(render(p)) == p.
std::string plan_to_json(const Plan& plan);
Plan plan_from_json(const std::string& text);

Plan load_plan(const std::string& path);
void save_plan(const Plan& plan, const std::string& path);

}  // namespace dmfprep
