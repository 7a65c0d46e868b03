#include "dmfprep/emdp.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dmfprep {

namespace {

const ConcFactor& half_point() {
    static const ConcFactor h = ConcFactor::make(1, 1);
    return h;
}

ConcFactor halve(const ConcFactor& v) { return mix(v, ConcFactor::zero()); }

}  // namespace

EmdpPlanner::EmdpPlanner(TargetSeries targets, PlannerConfig cfg)
    : cfg_(cfg), inv_(cfg.storage_capacity) {
    if (cfg_.max_precision < 0 || cfg_.max_precision > ConcFactor::kMaxPrecision)
        throw std::invalid_argument("planner precision limit out of range");
    for (const auto& t : targets)
        if (t.precision() > cfg_.max_precision)
            throw std::invalid_argument("target " + t.str() +
                                        " finer than precision limit 2^-" +
                                        std::to_string(cfg_.max_precision));
    plan_.targets = std::move(targets);
    satisfied_.assign(plan_.targets.size(), false);
    depth_limit_ = 2 * cfg_.max_precision + 16;
}

Droplet EmdpPlanner::fresh_sample() {
    ++samples_;
    return {ConcFactor::one(), DropletSource::sample()};
}

Droplet EmdpPlanner::fresh_buffer() {
    ++buffers_;
    return {ConcFactor::zero(), DropletSource::buffer()};
}

void EmdpPlanner::store_droplet(const Droplet& d) {
    if (auto evicted = inv_.store(d)) {
        // bounded storage: the displaced droplet is discarded at its split
        if (evicted->source.kind == DropletSource::Kind::StepOutput)
            plan_.steps[evicted->source.step - 1].outs[evicted->source.output] =
                Disposition::waste();
    }
}

std::optional<int> EmdpPlanner::match_pending(const ConcFactor& v) {
    auto it = pending_.find(v);
    if (it == pending_.end() || it->second.empty()) return std::nullopt;
    int j = it->second.front();
    it->second.pop_front();
    satisfied_[j] = true;
    return j;
}

void EmdpPlanner::unpend(const ConcFactor& v, int index) {
    auto it = pending_.find(v);
    if (it == pending_.end()) return;
    auto& dq = it->second;
    dq.erase(std::remove(dq.begin(), dq.end(), index), dq.end());
}

Droplet EmdpPlanner::emit_mix(const Droplet& a, const Droplet& b) {
    PlanStep st;
    st.id = static_cast<int>(plan_.steps.size()) + 1;
    st.in_a = a.source;
    st.in_b = b.source;
    st.out_cf = mix(a.cf, b.cf);
    if (auto j = match_pending(st.out_cf))
        st.outs[1] = Disposition::to_target(*j);
    plan_.steps.push_back(st);
    if (st.outs[1].kind == Disposition::Kind::Store)
        store_droplet({st.out_cf, DropletSource::step_output(st.id, 1)});
    return {st.out_cf, DropletSource::step_output(st.id, 0)};
}

std::optional<Droplet> EmdpPlanner::serial_dilution_tree(const ConcFactor& t) {
    if (t.is_zero() || t.is_one())
        throw std::invalid_argument("dilution ladder needs 0 < t < 1");
    Droplet current = fresh_sample();
    while (halve(current.cf) > t) current = emit_mix(current, fresh_buffer());
    // one more halving lands at or below t
    Droplet last = emit_mix(current, fresh_buffer());
    if (last.cf == t) return last;
    store_droplet(last);
    return std::nullopt;
}

int EmdpPlanner::partner_score(const ConcFactor& c) const {
    if (c.is_zero() || inv_.contains(c)) return 0;
    return c.precision();
}

bool EmdpPlanner::partner_feasible(const ConcFactor& c) const {
    if (c.is_zero() || inv_.contains(c)) return true;
    return !in_flight(c);  // would recurse into a value already being built
}

int EmdpPlanner::ladder_score(const ConcFactor& t) const {
    int m = 0;
    ConcFactor cur = ConcFactor::one();
    while (halve(cur) > t) {
        cur = halve(cur);
        ++m;
    }
    ConcFactor fin = halve(cur);
    ++m;
    if (fin == t) return m;
    // cheapest anchor afterwards: the smallest value above t among storage
    // and the ladder leftovers (cur itself is always in range)
    ConcFactor smallest = cur;
    if (auto higher = inv_.peek_immediate_higher(t))
        if (higher->cf < smallest) smallest = higher->cf;
    ConcFactor c_post = *complement(t, smallest);
    if (c_post.is_zero()) return m + 1;
    bool in_ladder = c_post.numerator() == 1 && c_post.precision() >= 1 &&
                     c_post.precision() <= m;
    if (in_ladder || inv_.contains(c_post)) return m + 1;
    return m + 1 + c_post.precision();
}

std::optional<EmdpPlanner::Candidate> EmdpPlanner::best_candidate(
    const ConcFactor& t, bool allow_ladder) const {
    std::optional<Candidate> best;
    auto consider = [&](Candidate c) {
        if (!best || c.score < best->score ||
            (c.score == best->score &&
             (c.kind < best->kind ||
              (c.kind == best->kind && c.anchor < best->anchor))))
            best = c;
    };

    for (const auto& v : inv_.distinct_values()) {
        if (!(v > t)) continue;
        auto c = complement(t, v);  // empty when v > 2t
        if (!c || !partner_feasible(*c)) continue;
        consider({Candidate::Kind::Stored, 1 + partner_score(*c), v});
    }

    if (auto c = complement(t, ConcFactor::one())) {  // t >= 1/2
        if (partner_feasible(*c))
            consider({Candidate::Kind::Sample, 1 + partner_score(*c),
                      ConcFactor::one()});
    }

    if (t < half_point()) {
        if (allow_ladder)
            consider({Candidate::Kind::Ladder, ladder_score(t), ConcFactor()});
        ConcFactor two_t = *doubled(t);
        if (!inv_.contains(two_t) && !in_flight(two_t))
            consider({Candidate::Kind::Doubled, t.precision(), two_t});
    }

    return best;
}

Droplet EmdpPlanner::create_droplet(const ConcFactor& t) {
    if (t.is_zero() || t.is_one())
        throw std::invalid_argument("create_droplet needs 0 < t < 1, got " +
                                    t.str());
    if (t.precision() > cfg_.max_precision)
        throw std::invalid_argument("value " + t.str() +
                                    " finer than precision limit");
    if (depth_ >= depth_limit_)
        throw std::runtime_error("construction recursion too deep at " +
                                 t.str());
    ++depth_;
    in_flight_.insert(t.packed());
    struct Cleanup {
        EmdpPlanner* p;
        std::uint64_t key;
        ~Cleanup() {
            --p->depth_;
            p->in_flight_.erase(key);
        }
    } cleanup{this, t.packed()};

    bool allow_ladder = true;
    for (;;) {
        auto cand = best_candidate(t, allow_ladder);
        if (!cand) {
            // every anchor is cycle-blocked; reseeding the ladder always
            // restores a usable one for low targets
            if (t < half_point()) {
                if (auto d = serial_dilution_tree(t)) return *d;
                continue;
            }
            throw std::runtime_error("no construction route for " + t.str());
        }

        Droplet anchor;
        switch (cand->kind) {
            case Candidate::Kind::Ladder: {
                if (auto d = serial_dilution_tree(t)) return *d;
                allow_ladder = false;  // rescore against the new storage
                continue;
            }
            case Candidate::Kind::Stored:
                anchor = *inv_.take_exact(cand->anchor);
                break;
            case Candidate::Kind::Sample:
                anchor = fresh_sample();
                break;
            case Candidate::Kind::Doubled:
                anchor = create_droplet(cand->anchor);
                break;
        }

        ConcFactor c = *complement(t, anchor.cf);
        Droplet partner;
        if (c.is_zero()) {
            partner = fresh_buffer();
        } else if (auto taken = inv_.take_exact(c)) {
            partner = *taken;
        } else {
            partner = create_droplet(c);
        }
        return emit_mix(anchor, partner);
    }
}

Plan EmdpPlanner::run() {
    if (ran_) throw std::logic_error("planner output already built");
    ran_ = true;

    const int n = static_cast<int>(plan_.targets.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    if (cfg_.process_descending)
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return plan_.targets[b] < plan_.targets[a];
        });

    for (int i : order) pending_[plan_.targets[i]].push_back(i);

    for (int i : order) {
        if (satisfied_[i]) continue;
        const ConcFactor t = plan_.targets[i];
        unpend(t, i);
        if (t.is_one()) {
            ++samples_;
            plan_.direct.push_back({i, DropletSource::sample()});
            satisfied_[i] = true;
            continue;
        }
        if (t.is_zero()) {
            ++buffers_;
            plan_.direct.push_back({i, DropletSource::buffer()});
            satisfied_[i] = true;
            continue;
        }
        Droplet d = [&] {
            if (auto hit = inv_.take_exact(t)) return *hit;
            return create_droplet(t);
        }();
        if (d.source.kind == DropletSource::Kind::StepOutput)
            plan_.steps[d.source.step - 1].outs[d.source.output] =
                Disposition::to_target(i);
        satisfied_[i] = true;
    }
    return plan_;
}

}  // namespace dmfprep
