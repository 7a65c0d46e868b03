#pragma once

#include <string>
#include <vector>

namespace dmfprep {

// One published resource-count row for a prior preparation algorithm on a
// shipped series.  Display-only reference data: comparison tables render
// these verbatim and never treat them as recomputed results.
struct ReferenceEntry {
    std::string series;     // "ts1" | "ts2" | "ts3"
    std::string algorithm;  // lower-case algorithm tag
    int samples = 0;
    int buffers = 0;
    int waste = 0;
    int steps = -1;  // -1 when the source does not report steps
};

const std::vector<ReferenceEntry>& reference_table();

// exact content of data/reference_counts.json (kept in sync by a test)
std::string reference_table_json();

}  // namespace dmfprep
