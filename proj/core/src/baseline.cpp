#include "dmfprep/baseline.hpp"

namespace dmfprep {

namespace {

DropletSource reservoir(bool sample) {
    return sample ? DropletSource::sample() : DropletSource::buffer();
}

// appends the d mix steps for one target occurrence; target_index receives
// the final droplet
void append_bit_serial(Plan& plan, const ConcFactor& t, int target_index) {
    if (t.is_one() || t.is_zero()) {
        plan.direct.push_back({target_index, reservoir(t.is_one())});
        return;
    }
    const std::uint64_t k = t.numerator();
    const int d = t.precision();
    // partners: LSB first, then a forced buffer, then the remaining bits
    std::vector<DropletSource> partners;
    partners.push_back(reservoir((k & 1) != 0));
    partners.push_back(reservoir(false));
    for (int j = 2; j <= d; ++j)
        partners.push_back(reservoir(((k >> (j - 1)) & 1) != 0));

    ConcFactor cur;
    auto cf_of = [](const DropletSource& s) {
        return s.kind == DropletSource::Kind::Sample ? ConcFactor::one()
                                                     : ConcFactor::zero();
    };
    for (int j = 1; j <= d; ++j) {
        PlanStep st;
        st.id = static_cast<int>(plan.steps.size()) + 1;
        if (j == 1) {
            st.in_a = partners[0];
            st.in_b = partners[1];
            st.out_cf = mix(cf_of(partners[0]), cf_of(partners[1]));
        } else {
            st.in_a = DropletSource::step_output(st.id - 1, 0);
            st.in_b = partners[j];
            st.out_cf = mix(cur, cf_of(partners[j]));
        }
        cur = st.out_cf;
        st.outs[0] = j == d ? Disposition::to_target(target_index)
                            : Disposition::store();
        st.outs[1] = Disposition::waste();
        plan.steps.push_back(st);
    }
}

}  // namespace

Plan two_way_mix_single(const ConcFactor& t) {
    Plan plan;
    plan.targets = {t};
    append_bit_serial(plan, t, 0);
    return plan;
}

Plan naive_multi(const TargetSeries& targets) {
    Plan plan;
    plan.targets = targets;
    for (std::size_t i = 0; i < targets.size(); ++i)
        append_bit_serial(plan, targets[i], static_cast<int>(i));
    return plan;
}

}  // namespace dmfprep
