#include "dmfprep/plan_json.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "dmfprep/executor.hpp"

namespace dmfprep {

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

json source_to_json(const DropletSource& s) {
    switch (s.kind) {
        case DropletSource::Kind::Sample:
            return "sample";
        case DropletSource::Kind::Buffer:
            return "buffer";
        case DropletSource::Kind::StepOutput:
            return json{{"step", s.step}, {"output", s.output}};
    }
    throw std::logic_error("unreachable droplet source kind");
}

DropletSource source_from_json(const json& j) {
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        if (s == "sample") return DropletSource::sample();
        if (s == "buffer") return DropletSource::buffer();
        throw std::invalid_argument("unknown droplet source '" + s + "'");
    }
    if (j.is_object() && j.contains("step") && j.contains("output")) {
        int step = j.at("step").get<int>();
        int output = j.at("output").get<int>();
        if (output != 0 && output != 1)
            throw std::invalid_argument("output index must be 0 or 1");
        return DropletSource::step_output(step, output);
    }
    throw std::invalid_argument("droplet source must be \"sample\", "
                                "\"buffer\", or {step, output}");
}

json disposition_to_json(const Disposition& d) {
    switch (d.kind) {
        case Disposition::Kind::Store:
            return json{{"disposition", "store"}};
        case Disposition::Kind::Waste:
            return json{{"disposition", "waste"}};
        case Disposition::Kind::Target:
            return json{{"disposition", "target"}, {"target", d.target}};
    }
    throw std::logic_error("unreachable disposition kind");
}

Disposition disposition_from_json(const json& j) {
    const auto& kind = j.at("disposition").get_ref<const std::string&>();
    if (kind == "store") return Disposition::store();
    if (kind == "waste") return Disposition::waste();
    if (kind == "target") return Disposition::to_target(j.at("target").get<int>());
    throw std::invalid_argument("unknown disposition '" + kind + "'");
}

}  // namespace

std::string plan_to_json(const Plan& plan) {
    json doc;
    doc["format_version"] = kFormatVersion;
    doc["targets"] = json::array();
    for (const auto& t : plan.targets) doc["targets"].push_back(t.str());
    doc["direct_dispenses"] = json::array();
    for (const auto& dd : plan.direct)
        doc["direct_dispenses"].push_back(
            {{"target", dd.target_index}, {"source", source_to_json(dd.source)}});
    doc["steps"] = json::array();
    for (const auto& st : plan.steps) {
        json js;
        js["id"] = st.id;
        js["inputs"] = {source_to_json(st.in_a), source_to_json(st.in_b)};
        js["out_cf"] = st.out_cf.str();
        js["outputs"] = {disposition_to_json(st.outs[0]),
                         disposition_to_json(st.outs[1])};
        doc["steps"].push_back(js);
    }
    auto trace = execute(plan);
    doc["stats"] = {{"samples", trace.stats.samples},
                    {"buffers", trace.stats.buffers},
                    {"waste", trace.stats.waste},
                    {"steps", trace.stats.steps},
                    {"peak_storage", trace.stats.peak_storage}};
    return doc.dump(2) + "\n";
}

Plan plan_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("plan file is not valid JSON: ") +
                                    e.what());
    }
    try {
        if (doc.at("format_version").get<int>() != kFormatVersion)
            throw std::invalid_argument(
                "unsupported plan format_version (expected " +
                std::to_string(kFormatVersion) + ")");
        Plan plan;
        for (const auto& t : doc.at("targets"))
            plan.targets.push_back(
                ConcFactor::parse(t.get_ref<const std::string&>()));
        if (doc.contains("direct_dispenses"))
            for (const auto& jd : doc.at("direct_dispenses"))
                plan.direct.push_back({jd.at("target").get<int>(),
                                       source_from_json(jd.at("source"))});
        if (doc.contains("steps"))
            for (const auto& js : doc.at("steps")) {
                PlanStep st;
                st.id = js.at("id").get<int>();
                const auto& inputs = js.at("inputs");
                if (!inputs.is_array() || inputs.size() != 2)
                    throw std::invalid_argument(
                        "step inputs must be an array of 2");
                st.in_a = source_from_json(inputs[0]);
                st.in_b = source_from_json(inputs[1]);
                st.out_cf = ConcFactor::parse(
                    js.at("out_cf").get_ref<const std::string&>());
                const auto& outputs = js.at("outputs");
                if (!outputs.is_array() || outputs.size() != 2)
                    throw std::invalid_argument(
                        "step outputs must be an array of 2");
                st.outs[0] = disposition_from_json(outputs[0]);
                st.outs[1] = disposition_from_json(outputs[1]);
                plan.steps.push_back(st);
            }
        return plan;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed plan document: ") +
                                    e.what());
    }
}

Plan load_plan(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open plan file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return plan_from_json(buf.str());
}

void save_plan(const Plan& plan, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write plan file: " + path);
    out << plan_to_json(plan);
}

}  // namespace dmfprep
