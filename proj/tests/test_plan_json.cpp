#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "dmfprep/emdp.hpp"
#include "dmfprep/plan_json.hpp"
#include "dmfprep/reference_data.hpp"
#include "dmfprep/series.hpp"
#include "support/witness.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("witness plan survives a render/parse round trip") {
    const auto plan = testsupport::ts1_witness_plan();
    const auto text = dmfprep::plan_to_json(plan);
    CHECK(text.find("\"format_version\": 1") != std::string::npos);
    CHECK(text.find("\"stats\"") != std::string::npos);
    CHECK(dmfprep::plan_from_json(text) == plan);
    // render is deterministic
    CHECK(dmfprep::plan_to_json(plan) == text);
}

TEST_CASE("planner output round-trips for every family instance") {
    for (const auto& ts : dmfprep::family_series_corpus()) {
        const auto plan = dmfprep::EmdpPlanner(ts).run();
        CHECK(dmfprep::plan_from_json(dmfprep::plan_to_json(plan)) == plan);
    }
}

TEST_CASE("file save/load round trip") {
    const auto plan = testsupport::ts1_witness_plan();
    const auto path =
        (std::filesystem::temp_directory_path() / "dmfprep_rt_plan.json")
            .string();
    dmfprep::save_plan(plan, path);
    CHECK(dmfprep::load_plan(path) == plan);
    std::remove(path.c_str());
}

TEST_CASE("parser rejects wrong versions and malformed documents") {
    CHECK_THROWS_AS(dmfprep::plan_from_json(
                        R"({"format_version": 2, "targets": [], "steps": [], "direct": []})"),
                    std::invalid_argument);
    CHECK_THROWS(dmfprep::plan_from_json("not json at all"));
    CHECK_THROWS(dmfprep::plan_from_json("{}"));
}

TEST_CASE("shipped witness fixture matches the in-tree plan byte for byte") {
    const std::string path =
        std::string(DMFPREP_DATA_DIR) + "/fixtures/ts1_witness.json";
    const auto text = slurp(path);
    const auto plan = dmfprep::plan_from_json(text);
    CHECK(plan == testsupport::ts1_witness_plan());
    CHECK(dmfprep::plan_to_json(plan) == text);
}

TEST_CASE("reference table file and embedded data stay in sync") {
    const std::string path =
        std::string(DMFPREP_DATA_DIR) + "/reference_counts.json";
    CHECK(dmfprep::reference_table_json() == slurp(path));

    const auto& rows = dmfprep::reference_table();
    CHECK(rows.size() == 21);  // 7 algorithms x 3 series
    bool found = false;
    for (const auto& r : rows) {
        if (r.series == "ts1" && r.algorithm == "emdp") {
            found = true;
            CHECK(r.samples == 5);
            CHECK(r.buffers == 4);
            CHECK(r.waste == 2);
            CHECK(r.steps == 8);
        }
    }
    CHECK(found);
}
