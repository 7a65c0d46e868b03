// dmfprep: plan, compare, and inspect mix-split dilution plans.
//
// Exit codes: 0 success, 1 usage error, 2 validation failure,
// 3 search budget exhausted.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dmfprep/baseline.hpp"
#include "dmfprep/dot_export.hpp"
#include "dmfprep/emdp.hpp"
#include "dmfprep/executor.hpp"
#include "dmfprep/oracle.hpp"
#include "dmfprep/plan.hpp"
#include "dmfprep/plan_json.hpp"
#include "dmfprep/reference_data.hpp"
#include "dmfprep/series.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kValidation = 2;
constexpr int kBudget = 3;

struct GlobalOpts {
    int precision = 7;
    std::uint64_t seed = 0x5eed;
    std::string output;
    std::string format = "text";
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

// writes to --output when given, stdout otherwise
void emit(const GlobalOpts& g, const std::string& text) {
    if (g.output.empty())
        std::cout << text;
    else
        write_file(g.output, text);
}

std::vector<std::string> split_tokens(const std::string& text,
                                      const std::string& seps) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (seps.find(ch) != std::string::npos) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// --targets accepts an inline list or a path to a file holding either a
// JSON array of concentration strings or a separated list
dmfprep::TargetSeries parse_targets(const std::string& arg, int precision) {
    std::string text = arg;
    if (std::filesystem::exists(arg) &&
        std::filesystem::is_regular_file(arg)) {
        text = read_file(arg);
    }
    const auto first = text.find_first_not_of(" \t\r\n");
    dmfprep::TargetSeries out;
    if (first != std::string::npos && text[first] == '[') {
        auto doc = nlohmann::json::parse(text);
        for (const auto& item : doc)
            out.push_back(dmfprep::ConcFactor::parse(
                item.get<std::string>(), precision));
        return out;
    }
    for (const auto& token : split_tokens(text, ", \t\r\n;"))
        out.push_back(dmfprep::ConcFactor::parse(token, precision));
    return out;
}

int common_precision(const dmfprep::TargetSeries& ts) {
    int p = 0;
    for (const auto& t : ts) p = std::max(p, t.precision());
    return p;
}

// series rendered against its common denominator, e.g. "14/16" not "7/8"
std::string series_display(const dmfprep::TargetSeries& ts) {
    const int p = common_precision(ts);
    std::string out;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (i) out += ", ";
        out += ts[i].str_at(p);
    }
    return out;
}

dmfprep::PlanStats stats_of(const dmfprep::Plan& plan) {
    return dmfprep::execute(plan).stats;
}

nlohmann::json stats_json(const dmfprep::PlanStats& s) {
    return {{"samples", s.samples},
            {"buffers", s.buffers},
            {"waste", s.waste},
            {"steps", s.steps},
            {"peak_storage", s.peak_storage}};
}

nlohmann::json trace_json(const dmfprep::ExecutionTrace& trace,
                          const dmfprep::ConservationVerdict& cons) {
    nlohmann::json j;
    j["stats"] = stats_json(trace.stats);
    j["targets_satisfied"] = trace.targets_satisfied;
    j["violations"] = nlohmann::json::array();
    for (const auto& v : trace.violations)
        j["violations"].push_back({{"step", v.step_id}, {"message", v.message}});
    j["steps"] = nlohmann::json::array();
    for (const auto& st : trace.step_traces)
        j["steps"].push_back({{"id", st.id},
                              {"in_a", st.in_a.str()},
                              {"in_b", st.in_b.str()},
                              {"out", st.out.str()},
                              {"storage_after", st.storage_after}});
    j["conservation"] = {{"ok", cons.ok}, {"detail", cons.detail}};
    return j;
}

std::string render_text_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& row : rows) {
        if (width.size() < row.size()) width.resize(row.size(), 0);
        for (std::size_t c = 0; c < row.size(); ++c)
            width[c] = std::max(width[c], row[c].size());
    }
    std::ostringstream out;
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << "  ";
            out << row[c];
            if (c + 1 < row.size())
                out << std::string(width[c] - row[c].size(), ' ');
        }
        out << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------- plan --

struct PlanOpts {
    std::string algorithm = "emdp";
    std::string targets_arg;
    bool reorder = true;
    std::optional<std::size_t> capacity;
};

int run_plan(const GlobalOpts& g, const PlanOpts& p) {
    if (p.targets_arg.empty()) {
        std::cerr << "plan: --targets must name at least one concentration\n";
        return kUsage;
    }
    const auto targets = parse_targets(p.targets_arg, g.precision);
    if (targets.empty()) {
        std::cerr << "plan: --targets must name at least one concentration\n";
        return kUsage;
    }

    dmfprep::Plan plan;
    if (p.algorithm == "emdp") {
        dmfprep::PlannerConfig cfg;
        cfg.process_descending = p.reorder;
        cfg.storage_capacity = p.capacity;
        plan = dmfprep::EmdpPlanner(targets, cfg).run();
    } else if (p.algorithm == "twowaymix") {
        if (targets.size() != 1) {
            std::cerr << "plan: twowaymix handles exactly one target (got "
                      << targets.size() << ")\n";
            return kUsage;
        }
        plan = dmfprep::two_way_mix_single(targets[0]);
    } else {
        plan = dmfprep::naive_multi(targets);
    }

    const auto trace = dmfprep::execute(plan);
    if (!trace.ok()) {
        for (const auto& v : trace.violations)
            std::cerr << "violation (step " << v.step_id << "): " << v.message
                      << "\n";
        return kValidation;
    }

    const std::string doc = dmfprep::plan_to_json(plan);
    if (!g.output.empty()) write_file(g.output, doc);

    if (g.format == "json") {
        if (g.output.empty())
            std::cout << doc;
        else
            std::cout << trace.stats.line() << "\n";
    } else if (g.format == "csv") {
        const auto& s = trace.stats;
        std::cout << "samples,buffers,waste,steps,peak\n"
                  << s.samples << ',' << s.buffers << ',' << s.waste << ','
                  << s.steps << ',' << s.peak_storage << "\n";
    } else {
        std::cout << trace.stats.line() << "\n";
    }
    return kOk;
}

// ------------------------------------------------------------- compare --

struct CompareOpts {
    std::string series;  // comma-separated fixture names
    std::string family;
    int n = 8;
    bool with_oracle = false;
    double budget = 15.0;
};

struct CompareRow {
    std::string series;
    std::string algorithm;
    std::string source;  // "computed" | "published-reference" | "unknown" | "infeasible"
    // -1 = not available
    int samples = -1, buffers = -1, waste = -1, steps = -1, peak = -1;
};

dmfprep::TargetSeries seeded_family_series(const std::string& family, int n,
                                           int precision, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int span = std::max(n - 1, 1);
    if (family == "linear") {
        const double a = 0.05 + 0.45 * u(rng);
        const double delta = (1.0 - a) / span * (0.25 + 0.7 * u(rng));
        return dmfprep::linear_series(a, delta, n, precision);
    }
    if (family == "harmonic") {
        const double a = 0.5 + 0.5 * u(rng);
        return dmfprep::harmonic_series(a, n, precision);
    }
    if (family == "geometric") {
        const double a = 0.5 + 0.5 * u(rng);
        const double r = 0.3 + 0.5 * u(rng);
        return dmfprep::geometric_series(a, r, n, precision);
    }
    // parabolic
    const double a = 0.05 + 0.25 * u(rng);
    const double b = (1.0 - a) / (span * span) * (0.25 + 0.7 * u(rng));
    return dmfprep::parabolic_series(a, b, n, precision);
}

std::optional<dmfprep::TargetSeries> fixture_by_name(const std::string& name) {
    if (name == "ts1") return dmfprep::fixture_ts1();
    if (name == "ts2") return dmfprep::fixture_ts2();
    if (name == "ts3") return dmfprep::fixture_ts3();
    return std::nullopt;
}

std::string cell(int v) { return v < 0 ? "-" : std::to_string(v); }

int run_compare(const GlobalOpts& g, const CompareOpts& c) {
    std::vector<std::pair<std::string, dmfprep::TargetSeries>> instances;
    if (!c.series.empty()) {
        for (const auto& name : split_tokens(c.series, ", ")) {
            auto fixture = fixture_by_name(name);
            if (!fixture) {
                std::cerr << "compare: unknown series '" << name
                          << "' (known: ts1, ts2, ts3)\n";
                return kUsage;
            }
            instances.emplace_back(name, *fixture);
        }
    } else if (!c.family.empty()) {
        instances.emplace_back(
            c.family, seeded_family_series(c.family, c.n, g.precision, g.seed));
    } else {
        std::cerr << "compare: need --series or --family\n";
        return kUsage;
    }

    std::vector<CompareRow> rows;
    for (const auto& [name, targets] : instances) {
        const auto fill = [&](const std::string& alg,
                              const dmfprep::PlanStats& s) {
            rows.push_back({name, alg, "computed", s.samples, s.buffers,
                            s.waste, s.steps, s.peak_storage});
        };
        fill("emdp", stats_of(dmfprep::EmdpPlanner(targets).run()));
        fill("naive", stats_of(dmfprep::naive_multi(targets)));
        if (c.with_oracle) {
            dmfprep::SearchCaps caps;
            caps.budget_seconds = c.budget;
            const auto res = dmfprep::min_cost_plan(targets, caps);
            if (res.found()) {
                fill("oracle", stats_of(*res.plan));
            } else {
                rows.push_back({name, "oracle",
                                res.verdict == dmfprep::OracleVerdict::Unknown
                                    ? "unknown"
                                    : "infeasible",
                                -1, -1, -1, -1, -1});
            }
        }
        for (const auto& ref : dmfprep::reference_table()) {
            if (ref.series != name) continue;
            rows.push_back({name, ref.algorithm, "published-reference",
                            ref.samples, ref.buffers, ref.waste, ref.steps,
                            -1});
        }
    }

    std::ostringstream out;
    if (g.format == "json") {
        nlohmann::json doc = nlohmann::json::array();
        for (const auto& r : rows) {
            nlohmann::json j{{"series", r.series},
                             {"algorithm", r.algorithm},
                             {"source", r.source}};
            const auto put = [&](const char* key, int v) {
                if (v >= 0)
                    j[key] = v;
                else
                    j[key] = nullptr;
            };
            put("samples", r.samples);
            put("buffers", r.buffers);
            put("waste", r.waste);
            put("steps", r.steps);
            put("peak_storage", r.peak);
            doc.push_back(j);
        }
        out << doc.dump(2) << "\n";
    } else if (g.format == "csv") {
        out << "series,algorithm,samples,buffers,waste,steps,peak,source\n";
        for (const auto& r : rows) {
            const auto c0 = [&](int v) { return v < 0 ? "" : std::to_string(v); };
            out << r.series << ',' << r.algorithm << ',' << c0(r.samples)
                << ',' << c0(r.buffers) << ',' << c0(r.waste) << ','
                << c0(r.steps) << ',' << c0(r.peak) << ',' << r.source << "\n";
        }
    } else {
        for (const auto& [name, targets] : instances)
            out << name << ": " << series_display(targets) << "\n";
        out << "\n";
        std::vector<std::vector<std::string>> table{
            {"series", "algorithm", "S", "B", "W", "steps", "peak", "source"}};
        for (const auto& r : rows)
            table.push_back({r.series, r.algorithm, cell(r.samples),
                             cell(r.buffers), cell(r.waste), cell(r.steps),
                             cell(r.peak), r.source});
        out << render_text_table(table)
            << "\npublished-reference rows are display-only; all other rows "
               "are recomputed from executed plans.\n";
    }
    emit(g, out.str());
    return kOk;
}

// -------------------------------------------------------------- oracle --

struct OracleOpts {
    std::string targets_arg;
    int max_steps = 24;
    int max_droplets = 6;
    double budget = 60.0;
    std::uint64_t max_states = 5'000'000;
    std::string objective = "samples";
    bool heuristic = true;
};

int run_oracle(const GlobalOpts& g, const OracleOpts& o) {
    if (o.targets_arg.empty()) {
        std::cerr << "oracle: --targets must name at least one concentration\n";
        return kUsage;
    }
    const auto targets = parse_targets(o.targets_arg, g.precision);
    if (targets.empty()) {
        std::cerr << "oracle: --targets must name at least one concentration\n";
        return kUsage;
    }

    dmfprep::SearchCaps caps;
    caps.max_steps = o.max_steps;
    caps.max_droplets = o.max_droplets;
    caps.budget_seconds = o.budget;
    caps.max_states = o.max_states;
    caps.use_heuristic = o.heuristic;
    const auto objective = o.objective == "steps"
                               ? dmfprep::Objective::StepsThenSamples
                               : dmfprep::Objective::SamplesThenSteps;

    const auto res = dmfprep::min_cost_plan(targets, caps, objective);
    if (res.verdict == dmfprep::OracleVerdict::Unknown) {
        std::cerr << "oracle: budget exhausted after " << res.expanded
                  << " expansions\n";
        return kBudget;
    }
    if (res.verdict == dmfprep::OracleVerdict::Infeasible) {
        std::cerr << "oracle: no plan within caps (max-steps=" << o.max_steps
                  << ", max-droplets=" << o.max_droplets << ")\n";
        return kValidation;
    }

    const auto trace = dmfprep::execute(*res.plan);
    const std::string doc = dmfprep::plan_to_json(*res.plan);
    if (!g.output.empty()) write_file(g.output, doc);
    if (g.format == "json") {
        if (g.output.empty())
            std::cout << doc;
        else
            std::cout << trace.stats.line() << "\n";
    } else {
        std::cout << trace.stats.line() << "\n";
    }
    return kOk;
}

// ------------------------------------------------------------ validate --

int run_validate(const GlobalOpts& g, const std::string& plan_path) {
    const auto plan = dmfprep::load_plan(plan_path);
    const auto trace = dmfprep::execute(plan);
    const auto cons = dmfprep::check_conservation(trace);

    if (g.format == "json") {
        emit(g, trace_json(trace, cons).dump(2) + "\n");
    } else {
        std::ostringstream out;
        out << "plan: " << plan.targets.size() << " targets, "
            << plan.steps.size() << " steps, " << plan.direct.size()
            << " direct dispenses\n";
        out << trace.stats.line() << "\n";
        for (const auto& v : trace.violations)
            out << "violation (step " << v.step_id << "): " << v.message
                << "\n";
        out << "conservation: " << cons.detail << "\n";
        out << "verdict: "
            << (trace.ok() && cons.ok
                    ? "valid"
                    : "INVALID (" + std::to_string(trace.violations.size()) +
                          " violations)")
            << "\n";
        emit(g, out.str());
    }
    return trace.ok() && cons.ok ? kOk : kValidation;
}

// ---------------------------------------------------------- gen-series --

struct GenOpts {
    std::string family;
    int n = 5;
    double start = 0.5;
    double step = 0.05;
    double ratio = 0.5;
    double coeff = 0.01;
    bool random = false;
    int instances = 10;
    int min_targets = 2;
    int max_targets = 8;
};

int run_gen_series(const GlobalOpts& g, const GenOpts& s) {
    std::vector<dmfprep::TargetSeries> corpus;
    if (s.random) {
        dmfprep::CorpusOptions opt;
        opt.count = s.instances;
        opt.min_targets = s.min_targets;
        opt.max_targets = s.max_targets;
        opt.max_precision = g.precision;
        opt.seed = g.seed;
        corpus = dmfprep::random_series_corpus(opt);
    } else if (s.family == "linear") {
        corpus.push_back(dmfprep::linear_series(s.start, s.step, s.n, g.precision));
    } else if (s.family == "harmonic") {
        corpus.push_back(dmfprep::harmonic_series(s.start, s.n, g.precision));
    } else if (s.family == "geometric") {
        corpus.push_back(
            dmfprep::geometric_series(s.start, s.ratio, s.n, g.precision));
    } else if (s.family == "parabolic") {
        corpus.push_back(
            dmfprep::parabolic_series(s.start, s.coeff, s.n, g.precision));
    } else {
        std::cerr << "gen-series: need --family or --random\n";
        return kUsage;
    }

    std::ostringstream out;
    if (g.format == "json") {
        const auto arr = [](const dmfprep::TargetSeries& ts) {
            nlohmann::json a = nlohmann::json::array();
            for (const auto& t : ts) a.push_back(t.str());
            return a;
        };
        if (corpus.size() == 1 && !s.random) {
            out << arr(corpus[0]).dump(2) << "\n";
        } else {
            nlohmann::json doc = nlohmann::json::array();
            for (const auto& ts : corpus) doc.push_back(arr(ts));
            out << doc.dump(2) << "\n";
        }
    } else {
        for (const auto& ts : corpus) out << series_display(ts) << "\n";
    }
    emit(g, out.str());
    return kOk;
}

// ---------------------------------------------------------- export-dot --

int run_export_dot(const GlobalOpts& g, const std::string& plan_path) {
    const auto plan = dmfprep::load_plan(plan_path);
    const auto trace = dmfprep::execute(plan);
    if (!trace.ok()) {
        for (const auto& v : trace.violations)
            std::cerr << "violation (step " << v.step_id << "): " << v.message
                      << "\n";
        return kValidation;
    }
    emit(g, dmfprep::plan_to_dot(plan));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mix-split droplet planning for dyadic dilution series"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--precision", g.precision,
                   "dyadic precision for decimal inputs and generators")
        ->check(CLI::Range(0, static_cast<int>(dmfprep::ConcFactor::kMaxPrecision)));
    app.add_option("--seed", g.seed, "seed for generated corpora");
    app.add_option("--output", g.output, "write the primary document here");
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));

    PlanOpts plan_opts;
    auto* plan_cmd = app.add_subcommand("plan", "synthesize a dilution plan");
    plan_cmd->fallthrough();
    plan_cmd->add_option("--algorithm", plan_opts.algorithm, "planner")
        ->check(CLI::IsMember({"emdp", "twowaymix", "naive"}));
    plan_cmd->add_option("--targets", plan_opts.targets_arg,
                         "concentration list or file");
    plan_cmd->add_flag("--reorder,!--no-reorder", plan_opts.reorder,
                       "process targets most-concentrated first (default on)");
    plan_cmd->add_option("--capacity", plan_opts.capacity,
                         "storage slots (oldest droplet evicted when full)");

    CompareOpts cmp_opts;
    auto* cmp_cmd =
        app.add_subcommand("compare", "resource comparison across planners");
    cmp_cmd->fallthrough();
    auto* series_opt =
        cmp_cmd->add_option("--series", cmp_opts.series, "fixtures: ts1,ts2,ts3");
    cmp_cmd->add_option("--family", cmp_opts.family, "generated series family")
        ->check(CLI::IsMember({"linear", "harmonic", "geometric", "parabolic"}))
        ->excludes(series_opt);
    cmp_cmd->add_option("--n", cmp_opts.n, "targets in the generated series")
        ->check(CLI::PositiveNumber);
    cmp_cmd->add_flag("--with-oracle", cmp_opts.with_oracle,
                      "include an exhaustive-search row (may be slow)");
    cmp_cmd->add_option("--budget", cmp_opts.budget,
                        "oracle time budget per series, seconds");

    OracleOpts orc_opts;
    auto* orc_cmd =
        app.add_subcommand("oracle", "exhaustive minimum-cost search");
    orc_cmd->fallthrough();
    orc_cmd->add_option("--targets", orc_opts.targets_arg,
                        "concentration list or file");
    orc_cmd->add_option("--max-steps", orc_opts.max_steps, "step cap")
        ->check(CLI::PositiveNumber);
    orc_cmd->add_option("--max-droplets", orc_opts.max_droplets,
                        "concurrent droplet cap")
        ->check(CLI::PositiveNumber);
    orc_cmd->add_option("--budget", orc_opts.budget, "time budget, seconds");
    orc_cmd->add_option("--max-states", orc_opts.max_states, "state cap");
    orc_cmd->add_option("--objective", orc_opts.objective, "lexicographic order")
        ->check(CLI::IsMember({"samples", "steps"}));
    orc_cmd->add_flag("--heuristic,!--no-heuristic", orc_opts.heuristic,
                      "denominator-growth lower bound (default on)");

    std::string validate_path;
    auto* val_cmd = app.add_subcommand("validate", "replay and audit a plan file");
    val_cmd->fallthrough();
    val_cmd->add_option("--plan", validate_path, "plan JSON file")->required();

    GenOpts gen_opts;
    auto* gen_cmd = app.add_subcommand("gen-series", "emit target series");
    gen_cmd->fallthrough();
    auto* family_opt =
        gen_cmd->add_option("--family", gen_opts.family, "closed-form family")
            ->check(CLI::IsMember({"linear", "harmonic", "geometric", "parabolic"}));
    gen_cmd->add_option("--n", gen_opts.n, "terms in the series")
        ->check(CLI::PositiveNumber);
    gen_cmd->add_option("--start", gen_opts.start, "first term");
    gen_cmd->add_option("--step", gen_opts.step, "linear/parabolic increment");
    gen_cmd->add_option("--ratio", gen_opts.ratio, "geometric ratio");
    gen_cmd->add_option("--coeff", gen_opts.coeff, "parabolic coefficient");
    gen_cmd->add_flag("--random", gen_opts.random, "random corpus instead")
        ->excludes(family_opt);
    gen_cmd->add_option("--instances", gen_opts.instances, "random corpus size")
        ->check(CLI::PositiveNumber);
    gen_cmd->add_option("--min-targets", gen_opts.min_targets, "corpus floor")
        ->check(CLI::PositiveNumber);
    gen_cmd->add_option("--max-targets", gen_opts.max_targets, "corpus ceiling")
        ->check(CLI::PositiveNumber);

    std::string dot_path;
    auto* dot_cmd = app.add_subcommand("export-dot", "Graphviz view of a plan");
    dot_cmd->fallthrough();
    dot_cmd->add_option("--plan", dot_path, "plan JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (plan_cmd->parsed()) return run_plan(g, plan_opts);
        if (cmp_cmd->parsed()) return run_compare(g, cmp_opts);
        if (orc_cmd->parsed()) return run_oracle(g, orc_opts);
        if (val_cmd->parsed()) return run_validate(g, validate_path);
        if (gen_cmd->parsed()) return run_gen_series(g, gen_opts);
        if (dot_cmd->parsed()) return run_export_dot(g, dot_path);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    }
    return kUsage;
}
