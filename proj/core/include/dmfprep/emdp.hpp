#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "dmfprep/inventory.hpp"
#include "dmfprep/plan.hpp"
#include "dmfprep/series.hpp"

namespace dmfprep {

struct PlannerConfig {
    // process targets from the most concentrated down (helps droplet reuse);
    // false keeps the series order as given
    bool process_descending = true;
    // bounded storage evicts the oldest droplet (it becomes waste)
    std::optional<std::size_t> storage_capacity;
    int max_precision = ConcFactor::kMaxPrecision;
};

// Greedy multi-target mix-split planner.  Each target t is produced by
// mixing an anchor droplet h > t with the complement 2t - h, preferring
// anchors whose complement is cheap (already stored, a reservoir fluid,
// or coarse).  Both mix outputs are usable: the sibling of a produced
// target satisfies an equal pending target directly, everything else is
// stored for reuse.
class EmdpPlanner {
public:
    explicit EmdpPlanner(TargetSeries targets, PlannerConfig cfg = {});

    // builds the whole plan; single-shot
    Plan run();

    // primitive moves, public so tests can drive them directly:

    // halving ladder seeded from a fresh sample droplet; stores every
    // intermediate, returns a droplet only when a halving lands exactly on t
    std::optional<Droplet> serial_dilution_tree(const ConcFactor& t);

    // produce one droplet of concentration t (0 < t < 1), recursing on
    // whatever complements the chosen anchor
    Droplet create_droplet(const ConcFactor& t);

    Inventory& inventory() { return inv_; }
    const Plan& plan() const { return plan_; }
    int samples_used() const { return samples_; }
    int buffers_used() const { return buffers_; }

private:
    struct Candidate {
        enum class Kind { Stored = 0, Ladder = 1, Sample = 2, Doubled = 3 };
        Kind kind;
        int score;
        ConcFactor anchor;  // stored value / 1 / 2t, by kind
    };

    Droplet fresh_sample();
    Droplet fresh_buffer();
    // records the mix step; output 0 is handed back to the caller, output 1
    // goes to an equal pending target if any, otherwise into storage
    Droplet emit_mix(const Droplet& a, const Droplet& b);
    void store_droplet(const Droplet& d);
    std::optional<int> match_pending(const ConcFactor& v);
    void unpend(const ConcFactor& v, int index);

    bool in_flight(const ConcFactor& v) const {
        return in_flight_.count(v.packed()) != 0;
    }
    int partner_score(const ConcFactor& c) const;
    bool partner_feasible(const ConcFactor& c) const;
    int ladder_score(const ConcFactor& t) const;
    std::optional<Candidate> best_candidate(const ConcFactor& t,
                                            bool allow_ladder) const;

    PlannerConfig cfg_;
    Plan plan_;
    Inventory inv_;
    std::map<ConcFactor, std::deque<int>> pending_;
    std::vector<bool> satisfied_;
    std::set<std::uint64_t> in_flight_;  // values being constructed, cycle guard
    int samples_ = 0;
    int buffers_ = 0;
    int depth_ = 0;
    int depth_limit_ = 0;
    bool ran_ = false;
};

}  // namespace dmfprep
