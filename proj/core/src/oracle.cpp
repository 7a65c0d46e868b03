#include "dmfprep/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <deque>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>

#include "dmfprep/executor.hpp"

namespace dmfprep {

namespace {

enum class Out : std::uint8_t { Satisfy, Keep, Waste };

// unordered output handling combos, fixed enumeration order
constexpr std::pair<Out, Out> kCombos[] = {
    {Out::Satisfy, Out::Satisfy}, {Out::Satisfy, Out::Keep},
    {Out::Satisfy, Out::Waste},   {Out::Keep, Out::Keep},
    {Out::Keep, Out::Waste},      {Out::Waste, Out::Waste},
};

struct Action {
    ConcFactor in_a, in_b;  // in_a <= in_b; 0/1 mean reservoir dispenses
    std::pair<Out, Out> combo;
};

struct Node {
    std::int64_t parent = -1;
    Action action;
    int samples = 0, steps = 0, buffers = 0;
};

// sorted packed multisets: available then pending
using StateKey = std::string;

StateKey encode(const std::vector<std::uint64_t>& avail,
                const std::vector<std::uint64_t>& pend) {
    StateKey key;
    key.reserve((avail.size() + pend.size() + 1) * sizeof(std::uint64_t));
    auto put = [&](std::uint64_t v) {
        key.append(reinterpret_cast<const char*>(&v), sizeof(v));
    };
    put(avail.size());
    for (auto v : avail) put(v);
    for (auto v : pend) put(v);
    return key;
}

struct Frontier {
    // f-cost triple in objective order, then insertion sequence
    std::int64_t f0, f1, f2, seq;
    std::int64_t node;
    bool operator>(const Frontier& o) const {
        return std::tie(f0, f1, f2, seq) > std::tie(o.f0, o.f1, o.f2, o.seq);
    }
};

int max_precision_of(const std::vector<std::uint64_t>& packed) {
    int p = 0;
    for (auto v : packed)
        p = std::max(p, static_cast<int>(v & 0x3f));
    return p;
}

ConcFactor unpack(std::uint64_t v) {
    return ConcFactor::make(v >> 6, static_cast<int>(v & 0x3f));
}

}  // namespace

OracleResult min_cost_plan(const TargetSeries& targets, const SearchCaps& caps,
                           Objective objective) {
    OracleResult res;

    Plan skeleton;
    skeleton.targets = targets;
    int direct_samples = 0, direct_buffers = 0;
    std::vector<std::uint64_t> pend0;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const auto& t = targets[i];
        if (t.is_one()) {
            skeleton.direct.push_back(
                {static_cast<int>(i), DropletSource::sample()});
            ++direct_samples;
        } else if (t.is_zero()) {
            skeleton.direct.push_back(
                {static_cast<int>(i), DropletSource::buffer()});
            ++direct_buffers;
        } else {
            if (t.precision() > caps.max_precision) return res;  // Unknown
            pend0.push_back(t.packed());
        }
    }
    std::sort(pend0.begin(), pend0.end());

    if (pend0.empty()) {
        res.verdict = OracleVerdict::Found;
        res.plan = skeleton;
        return res;
    }
    if (max_precision_of(pend0) > caps.max_steps) {
        res.verdict = OracleVerdict::Infeasible;  // growth bound rules it out
        return res;
    }

    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration_cast<
                              std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(caps.budget_seconds));

    std::vector<Node> nodes;
    std::vector<StateKey> node_state;
    std::unordered_map<StateKey, std::int64_t> best;  // state -> node id
    std::priority_queue<Frontier, std::vector<Frontier>, std::greater<>> open;
    std::int64_t seq = 0;

    auto h_steps = [&](const std::vector<std::uint64_t>& avail,
                       const std::vector<std::uint64_t>& pend) {
        if (!caps.use_heuristic) return 0;
        if (pend.empty()) return 0;
        return std::max(0, max_precision_of(pend) - max_precision_of(avail));
    };

    // lower bound on further sample dispenses: a mix output sits strictly
    // below its larger input, so a pending value at or above everything
    // held needs a fresh sample; and held mass short of pending mass must
    // be made up in whole sample droplets
    auto h_samples = [&](const std::vector<std::uint64_t>& avail,
                         const std::vector<std::uint64_t>& pend) -> int {
        if (!caps.use_heuristic) return 0;
        if (pend.empty()) return 0;
        const int prec =
            std::max(max_precision_of(avail), max_precision_of(pend));
        std::uint64_t amax = 0, asum = 0, pmax = 0, psum = 0;
        for (auto v : avail) {
            const std::uint64_t n = (v >> 6)
                                    << (prec - static_cast<int>(v & 0x3f));
            amax = std::max(amax, n);
            asum += n;
        }
        for (auto v : pend) {
            const std::uint64_t n = (v >> 6)
                                    << (prec - static_cast<int>(v & 0x3f));
            pmax = std::max(pmax, n);
            psum += n;
        }
        const std::uint64_t unit = std::uint64_t{1} << prec;
        int need = 0;
        if (pmax >= amax) {
            // only a fresh-sample mix can halve the gap to full
            // concentration, so closing from (unit - amax) down to
            // (unit - pmax) takes log2 many; an exact tie still needs
            // one because outputs sit strictly below their larger input
            const std::uint64_t gap_have = unit - amax;
            const std::uint64_t gap_want = unit - pmax;
            int climb = 1;
            while ((gap_want << climb) < gap_have) ++climb;
            need = climb;
        }
        if (psum > asum) {
            need = std::max(
                need, static_cast<int>((psum - asum + unit - 1) >> prec));
        }
        return need;
    };

    auto push = [&](std::int64_t id, int hs, int hn) {
        const Node& n = nodes[id];
        std::int64_t f0, f1;
        if (objective == Objective::SamplesThenSteps) {
            f0 = n.samples + hn;
            f1 = n.steps + hs;
        } else {
            f0 = n.steps + hs;
            f1 = n.samples + hn;
        }
        open.push({f0, f1, n.buffers, seq++, id});
    };

    auto better = [&](const Node& a, const Node& b) {
        auto tup = [&](const Node& n) {
            return objective == Objective::SamplesThenSteps
                       ? std::tuple{n.samples, n.steps, n.buffers}
                       : std::tuple{n.steps, n.samples, n.buffers};
        };
        return tup(a) < tup(b);
    };

    {
        Node root;
        root.samples = direct_samples;
        root.buffers = direct_buffers;
        nodes.push_back(root);
        StateKey key = encode({}, pend0);
        node_state.push_back(key);
        best.emplace(key, 0);
        push(0, h_steps({}, pend0), h_samples({}, pend0));
    }

    std::int64_t goal = -1;
    std::uint64_t checked_clock = 0;

    while (!open.empty()) {
        Frontier fr = open.top();
        open.pop();
        const StateKey key = node_state[fr.node];
        auto bit = best.find(key);
        if (bit == best.end() || bit->second != fr.node) continue;  // stale

        // decode
        const char* raw = key.data();
        std::uint64_t navail;
        std::memcpy(&navail, raw, sizeof(navail));
        std::vector<std::uint64_t> avail(navail);
        std::memcpy(avail.data(), raw + sizeof(std::uint64_t),
                    navail * sizeof(std::uint64_t));
        std::size_t npend =
            key.size() / sizeof(std::uint64_t) - 1 - navail;
        std::vector<std::uint64_t> pend(npend);
        std::memcpy(pend.data(),
                    raw + (1 + navail) * sizeof(std::uint64_t),
                    npend * sizeof(std::uint64_t));

        if (pend.empty()) {
            goal = fr.node;
            break;
        }

        ++res.expanded;
        if (res.expanded > caps.max_states) return res;  // Unknown
        if ((++checked_clock & 0x3ff) == 0 &&
            std::chrono::steady_clock::now() > deadline)
            return res;  // Unknown

        const Node cur = nodes[fr.node];
        if (cur.steps >= caps.max_steps) continue;

        // candidate input values: reservoirs plus distinct held values,
        // in ascending value order (deterministic action enumeration)
        std::vector<ConcFactor> values;
        values.push_back(ConcFactor::zero());
        for (std::size_t i = 0; i < avail.size(); ++i)
            if (i == 0 || avail[i] != avail[i - 1])
                values.push_back(unpack(avail[i]));
        values.push_back(ConcFactor::one());
        std::sort(values.begin(), values.end());

        for (std::size_t ia = 0; ia < values.size(); ++ia) {
            for (std::size_t ib = ia + 1; ib < values.size(); ++ib) {
                const ConcFactor &va = values[ia], &vb = values[ib];
                ConcFactor out = mix(va, vb);
                if (out.precision() > caps.max_precision) continue;

                std::vector<std::uint64_t> base = avail;
                int extra_samples = 0, extra_buffers = 0;
                auto use = [&](const ConcFactor& v) {
                    if (v.is_one()) {
                        ++extra_samples;
                        return;
                    }
                    if (v.is_zero()) {
                        ++extra_buffers;
                        return;
                    }
                    auto it =
                        std::find(base.begin(), base.end(), v.packed());
                    base.erase(it);
                };
                use(va);
                use(vb);

                std::uint64_t out_key = out.packed();
                auto pending_count = static_cast<int>(
                    std::count(pend.begin(), pend.end(), out_key));

                for (const auto& combo : kCombos) {
                    int nsat = (combo.first == Out::Satisfy) +
                               (combo.second == Out::Satisfy);
                    int nkeep = (combo.first == Out::Keep) +
                                (combo.second == Out::Keep);
                    if (nsat > pending_count) continue;
                    if (static_cast<int>(base.size()) + nkeep >
                        caps.max_droplets)
                        continue;

                    std::vector<std::uint64_t> navl = base;
                    for (int k = 0; k < nkeep; ++k) navl.push_back(out_key);
                    std::sort(navl.begin(), navl.end());
                    std::vector<std::uint64_t> npnd = pend;
                    for (int k = 0; k < nsat; ++k)
                        npnd.erase(
                            std::find(npnd.begin(), npnd.end(), out_key));

                    int h = h_steps(navl, npnd);
                    Node child;
                    child.parent = fr.node;
                    child.action = {va, vb, combo};
                    child.samples = cur.samples + extra_samples;
                    child.steps = cur.steps + 1;
                    child.buffers = cur.buffers + extra_buffers;
                    if (child.steps + h > caps.max_steps) continue;

                    StateKey ckey = encode(navl, npnd);
                    auto it = best.find(ckey);
                    if (it != best.end() && !better(child, nodes[it->second]))
                        continue;
                    std::int64_t id = static_cast<std::int64_t>(nodes.size());
                    nodes.push_back(child);
                    node_state.push_back(ckey);
                    if (it != best.end())
                        it->second = id;
                    else
                        best.emplace(std::move(ckey), id);
                    push(id, h, h_samples(navl, npnd));
                }
            }
        }
    }

    if (goal < 0) {
        res.verdict = OracleVerdict::Infeasible;
        return res;
    }

    // rebuild the action chain root -> goal
    std::vector<Action> chain;
    for (std::int64_t id = goal; nodes[id].parent >= 0; id = nodes[id].parent)
        chain.push_back(nodes[id].action);
    std::reverse(chain.begin(), chain.end());

    Plan plan = skeleton;
    // concrete droplet references per value, FIFO
    std::map<ConcFactor, std::deque<DropletSource>> held;
    // pending target indices per value, in series order
    std::map<ConcFactor, std::deque<int>> want;
    for (std::size_t i = 0; i < targets.size(); ++i)
        if (!targets[i].is_zero() && !targets[i].is_one())
            want[targets[i]].push_back(static_cast<int>(i));

    for (const auto& act : chain) {
        PlanStep st;
        st.id = static_cast<int>(plan.steps.size()) + 1;
        auto source_for = [&](const ConcFactor& v) {
            if (v.is_one()) return DropletSource::sample();
            if (v.is_zero()) return DropletSource::buffer();
            auto& dq = held[v];
            DropletSource s = dq.front();
            dq.pop_front();
            return s;
        };
        st.in_a = source_for(act.in_a);
        st.in_b = source_for(act.in_b);
        st.out_cf = mix(act.in_a, act.in_b);
        Out parts[2] = {act.combo.first, act.combo.second};
        for (int j = 0; j < 2; ++j) {
            switch (parts[j]) {
                case Out::Satisfy: {
                    auto& dq = want[st.out_cf];
                    st.outs[j] = Disposition::to_target(dq.front());
                    dq.pop_front();
                    break;
                }
                case Out::Keep:
                    st.outs[j] = Disposition::store();
                    held[st.out_cf].push_back(
                        DropletSource::step_output(st.id, j));
                    break;
                case Out::Waste:
                    st.outs[j] = Disposition::waste();
                    break;
            }
        }
        plan.steps.push_back(st);
    }

    res.verdict = OracleVerdict::Found;
    res.plan = std::move(plan);
    return res;
}

std::vector<GapRow> optimality_gap(
    const std::function<Plan(const TargetSeries&)>& planner,
    const std::vector<TargetSeries>& instances, const SearchCaps& caps,
    Objective objective) {
    std::vector<GapRow> rows;
    for (const auto& ts : instances) {
        GapRow row;
        row.targets = ts;
        Plan p = planner(ts);
        auto ptrace = execute(p);
        if (!ptrace.ok())
            throw std::logic_error("planner produced an invalid plan");
        row.planner = ptrace.stats;
        OracleResult o = min_cost_plan(ts, caps, objective);
        row.verdict = o.verdict;
        if (o.found()) {
            auto otrace = execute(*o.plan);
            if (!otrace.ok())
                throw std::logic_error("oracle produced an invalid plan");
            row.oracle = otrace.stats;
            auto cost = [&](const PlanStats& s) {
                return objective == Objective::SamplesThenSteps
                           ? std::pair{s.samples, s.steps}
                           : std::pair{s.steps, s.samples};
            };
            if (cost(row.planner) < cost(*row.oracle))
                throw std::logic_error(
                    "planner beat the oracle, minimality disproved: " +
                    row.planner.line() + " vs " + row.oracle->line());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace dmfprep
