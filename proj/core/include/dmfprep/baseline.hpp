#pragma once

#include "dmfprep/plan.hpp"
#include "dmfprep/series.hpp"

namespace dmfprep {

// Bit-serial dilution of a single target k/2^d: one mix per bit, d steps,
// popcount(k) samples, d+1-popcount(k) buffers; every split's spare droplet
// is discarded immediately (no storage reuse).
Plan two_way_mix_single(const ConcFactor& t);

// Per-target independent preparation: concatenated bit-serial plans with
// no sharing at all.  The comparison floor for the greedy planner.
Plan naive_multi(const TargetSeries& targets);

}  // namespace dmfprep
