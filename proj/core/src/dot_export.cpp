#include "dmfprep/dot_export.hpp"

#include <sstream>

namespace dmfprep {

namespace {

const char* kSampleFill = "#f4a582";
const char* kBufferFill = "#92c5de";
const char* kTargetFill = "#b8e186";
const char* kWasteFill = "#cccccc";

std::string reservoir_node(std::ostringstream& os, const std::string& name,
                           bool sample) {
    os << "  \"" << name << "\" [shape=ellipse style=filled fillcolor=\""
       << (sample ? kSampleFill : kBufferFill) << "\" label=\""
       << (sample ? "1" : "0") << "\"];\n";
    return name;
}

}  // namespace

std::string plan_to_dot(const Plan& plan) {
    std::ostringstream os;
    os << "digraph plan {\n";
    os << "  rankdir=TB;\n";
    os << "  node [fontname=\"Helvetica\" fontsize=11];\n";

    for (const auto& st : plan.steps) {
        const std::string mix_name = "m" + std::to_string(st.id);
        auto input_node = [&](const DropletSource& src,
                              const char* suffix) -> std::string {
            if (src.kind == DropletSource::Kind::StepOutput)
                return "o" + std::to_string(src.step) + "_" +
                       std::to_string(src.output);
            return reservoir_node(os, "s" + std::to_string(st.id) + suffix,
                                  src.kind == DropletSource::Kind::Sample);
        };
        std::string in_a = input_node(st.in_a, "a");
        std::string in_b = input_node(st.in_b, "b");
        os << "  \"" << mix_name << "\" [shape=box label=\"#" << st.id
           << "\"];\n";
        os << "  \"" << in_a << "\" -> \"" << mix_name << "\";\n";
        os << "  \"" << in_b << "\" -> \"" << mix_name << "\";\n";
        for (int j = 0; j < 2; ++j) {
            const std::string out_name =
                "o" + std::to_string(st.id) + "_" + std::to_string(j);
            const Disposition& d = st.outs[j];
            os << "  \"" << out_name << "\" [shape=ellipse";
            switch (d.kind) {
                case Disposition::Kind::Target:
                    os << " style=filled fillcolor=\"" << kTargetFill
                       << "\" label=\"" << st.out_cf.str() << " -> T"
                       << d.target << "\"";
                    break;
                case Disposition::Kind::Waste:
                    os << " style=filled fillcolor=\"" << kWasteFill
                       << "\" label=\"" << st.out_cf.str() << " (waste)\"";
                    break;
                case Disposition::Kind::Store:
                    os << " label=\"" << st.out_cf.str() << "\"";
                    break;
            }
            os << "];\n";
            os << "  \"" << mix_name << "\" -> \"" << out_name << "\";\n";
        }
    }

    for (const auto& dd : plan.direct) {
        bool sample = dd.source.kind == DropletSource::Kind::Sample;
        os << "  \"d" << dd.target_index
           << "\" [shape=ellipse style=filled fillcolor=\"" << kTargetFill
           << "\" label=\"" << (sample ? "1" : "0") << " -> T"
           << dd.target_index << "\"];\n";
    }

    os << "}\n";
    return os.str();
}

}  // namespace dmfprep
