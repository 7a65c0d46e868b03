#include "dmfprep/executor.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace dmfprep {

namespace {

// exact running sum of CFs as a dyadic fraction
struct MassAcc {
    std::uint64_t num = 0;
    int prec = 0;

    void add(const ConcFactor& cf) {
        int p = std::max(prec, cf.precision());
        num <<= (p - prec);
        num += cf.numerator_at(p);
        prec = p;
    }
};

}  // namespace

ExecutionTrace execute(const Plan& plan) {
    ExecutionTrace tr;
    auto violate = [&](int id, std::string msg) {
        tr.violations.push_back({id, std::move(msg)});
    };

    for (std::size_t s = 0; s < plan.steps.size(); ++s)
        if (plan.steps[s].id != static_cast<int>(s) + 1) {
            violate(plan.steps[s].id, "step ids must run 1..n in order");
            return tr;
        }

    std::vector<char> satisfied(plan.targets.size(), 0);
    MassAcc mass;

    auto deliver = [&](int step_id, int index, const ConcFactor& value) {
        if (index < 0 || index >= static_cast<int>(plan.targets.size())) {
            violate(step_id, "target index " + std::to_string(index) +
                                 " out of range");
            return;
        }
        if (plan.targets[index] != value) {
            violate(step_id, "target " + std::to_string(index) + " needs " +
                                 plan.targets[index].str() + ", got " +
                                 value.str());
            return;
        }
        if (satisfied[index]) {
            violate(step_id,
                    "target " + std::to_string(index) + " satisfied twice");
            return;
        }
        satisfied[index] = 1;
        ++tr.targets_satisfied;
        mass.add(value);
    };

    for (const auto& dd : plan.direct) {
        ConcFactor cf;
        if (dd.source.kind == DropletSource::Kind::Sample) {
            ++tr.stats.samples;
            cf = ConcFactor::one();
        } else if (dd.source.kind == DropletSource::Kind::Buffer) {
            ++tr.stats.buffers;
            cf = ConcFactor::zero();
        } else {
            violate(0, "direct dispense must draw from a reservoir");
            continue;
        }
        deliver(0, dd.target_index, cf);
    }

    std::map<std::pair<int, int>, ConcFactor> live;  // (step, output) -> cf
    std::set<std::pair<int, int>> consumed;

    auto resolve = [&](const PlanStep& st,
                       const DropletSource& src) -> std::optional<ConcFactor> {
        switch (src.kind) {
            case DropletSource::Kind::Sample:
                ++tr.stats.samples;
                return ConcFactor::one();
            case DropletSource::Kind::Buffer:
                ++tr.stats.buffers;
                return ConcFactor::zero();
            case DropletSource::Kind::StepOutput: {
                std::pair<int, int> key{src.step, src.output};
                auto it = live.find(key);
                if (it != live.end()) {
                    ConcFactor cf = it->second;
                    live.erase(it);
                    consumed.insert(key);
                    return cf;
                }
                std::string ref = "step " + std::to_string(src.step) +
                                  " output " + std::to_string(src.output);
                if (consumed.count(key))
                    violate(st.id, ref + " consumed twice");
                else
                    violate(st.id, ref + " is not available");
                return std::nullopt;
            }
        }
        violate(st.id, "unknown droplet source");
        return std::nullopt;
    };

    for (const auto& st : plan.steps) {
        auto a = resolve(st, st.in_a);
        auto b = resolve(st, st.in_b);
        if (!a || !b) continue;
        ConcFactor value = mix(*a, *b);
        if (value != st.out_cf)
            violate(st.id, "declared output " + st.out_cf.str() +
                               " but inputs mix to " + value.str());
        for (int j = 0; j < 2; ++j) {
            const Disposition& disp = st.outs[j];
            switch (disp.kind) {
                case Disposition::Kind::Target:
                    deliver(st.id, disp.target, value);
                    break;
                case Disposition::Kind::Store:
                    live.emplace(std::pair<int, int>{st.id, j}, value);
                    break;
                case Disposition::Kind::Waste:
                    ++tr.stats.waste;
                    mass.add(value);
                    break;
            }
        }
        tr.stats.peak_storage =
            std::max(tr.stats.peak_storage, static_cast<int>(live.size()));
        tr.step_traces.push_back(
            {st.id, *a, *b, value, static_cast<int>(live.size())});
    }

    tr.stats.steps = static_cast<int>(plan.steps.size());

    // whatever storage still holds is end-of-run waste
    for (const auto& [key, cf] : live) {
        (void)key;
        ++tr.stats.waste;
        mass.add(cf);
    }

    for (std::size_t i = 0; i < plan.targets.size(); ++i)
        if (!satisfied[i])
            violate(0, "target " + std::to_string(i) + " (" +
                           plan.targets[i].str() + ") never satisfied");

    tr.terminal_mass_num = mass.num;
    tr.mass_precision = mass.prec;
    return tr;
}

ConservationVerdict check_conservation(const ExecutionTrace& tr) {
    if (!tr.ok())
        return {false, "trace has " + std::to_string(tr.violations.size()) +
                           " violation(s); balance not meaningful"};
    const auto& s = tr.stats;
    long long in = s.samples + s.buffers;
    long long out = tr.targets_satisfied + s.waste;
    std::string count_line = "count: " + std::to_string(s.samples) + "+" +
                             std::to_string(s.buffers) + " in vs " +
                             std::to_string(tr.targets_satisfied) + "+" +
                             std::to_string(s.waste) + " out";
    if (in != out) return {false, count_line + " UNBALANCED"};
    std::uint64_t lhs = static_cast<std::uint64_t>(s.samples)
                        << tr.mass_precision;
    std::string mass_line =
        "mass: " + std::to_string(s.samples) + " = " +
        std::to_string(tr.terminal_mass_num) + "/2^" +
        std::to_string(tr.mass_precision);
    if (lhs != tr.terminal_mass_num) return {false, mass_line + " UNBALANCED"};
    return {true, count_line + " ok; " + mass_line + " ok"};
}

}  // namespace dmfprep
