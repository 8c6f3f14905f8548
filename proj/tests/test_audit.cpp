#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "logbench/audit.hpp"
#include "logbench/pipeline.hpp"
#include "logbench/synth.hpp"

using namespace logbench;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("logbench_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

nlohmann::json load_json(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in);
    return nlohmann::json::parse(in);
}

void save_json(const fs::path& p, const nlohmann::json& j) {
    std::ofstream out(p);
    out << j.dump(2) << '\n';
}

// The 10-case log with one straddler used across the audit tests:
// seven short early cases, a straddler crossing the separation time,
// and two late cases (the last one falls into the terminal zone).
EventLog straddler_log() {
    std::vector<testutil::CaseSpec> specs;
    for (int i = 0; i < 7; ++i)
        specs.push_back({"early" + std::to_string(i), {double(i), i + 0.2}});
    specs.push_back({"straddler", {7.5, 8.1}});
    specs.push_back({"late0", {8.0, 8.2}});
    specs.push_back({"late1", {9.0, 9.2}});
    return testutil::make_log(specs);
}

PipelineConfig base_config(const fs::path& out) {
    PipelineConfig c;
    c.out_dir = out.string();
    return c;
}

}  // namespace

TEST_CASE("pipeline output passes all seven checks") {
    auto [log, truth] = generate([] {
        SynthSpec s;
        s.seed = 71;
        s.n_cases = 60;
        s.duration_mean_days = 1.0;
        return s;
    }());
    fs::path dir = temp_dir("audit_pass");
    PipelineOutcome out = run_pipeline_to_files(log, base_config(dir));
    AuditReport report = audit_benchmark(out.train_csv, out.test_csv, out.manifest_json);
    for (const auto& c : report.checks) {
        INFO(c.id, ": ", c.detail);
        CHECK(c.pass);
    }
    CHECK(report.all_pass);
    CHECK(report.checks.size() == 7);
    fs::remove_all(dir);
}

TEST_CASE("regular split with a straddler fails exactly check b") {
    fs::path dir = temp_dir("audit_regular");
    PipelineConfig config = base_config(dir);
    config.mode = SplitMode::Regular;
    PipelineOutcome out = run_pipeline_to_files(straddler_log(), config);
    AuditReport report = audit_benchmark(out.train_csv, out.test_csv, out.manifest_json);
    CHECK(!report.all_pass);
    for (const auto& c : report.checks) {
        INFO(c.id, ": ", c.detail);
        CHECK(c.pass == (c.id != "b"));
    }
    fs::remove_all(dir);
}

TEST_CASE("strict split on the same log passes") {
    fs::path dir = temp_dir("audit_strict");
    PipelineOutcome out = run_pipeline_to_files(straddler_log(), base_config(dir));
    AuditReport report = audit_benchmark(out.train_csv, out.test_csv, out.manifest_json);
    CHECK(report.all_pass);
    // The straddler contributes its post-separation prefix to the test set.
    CHECK(out.products.split.accounting.test_missing_short_prefixes == 1);
    fs::remove_all(dir);
}

TEST_CASE("manifest corruptions are caught by the right check") {
    fs::path dir = temp_dir("audit_mutations");
    PipelineOutcome out = run_pipeline_to_files(straddler_log(), base_config(dir));
    const nlohmann::json clean = load_json(out.manifest_json);

    SUBCASE("accounting off by one fails f") {
        nlohmann::json bad = clean;
        bad["accounting"]["train_cases"] = clean["accounting"]["train_cases"].get<int>() + 1;
        save_json(out.manifest_json, bad);
        AuditReport r = audit_benchmark(out.train_csv, out.test_csv, out.manifest_json);
        CHECK(!r.find("f")->pass);
    }
    SUBCASE("broken full-case-equivalent fails g") {
        nlohmann::json bad = clean;
        bad["accounting"]["full_case_equivalent"] =
            clean["accounting"]["full_case_equivalent"].get<double>() + 0.5;
        save_json(out.manifest_json, bad);
        AuditReport r = audit_benchmark(out.train_csv, out.test_csv, out.manifest_json);
        CHECK(!r.find("g")->pass);
        CHECK(!r.find("f")->pass);
    }
    SUBCASE("t_sep moved later fails c") {
        nlohmann::json bad = clean;
        TimestampMs t = parse_timestamp(clean["t_sep"].get<std::string>(), "iso8601");
        bad["t_sep"] = format_iso8601_ms(t + days_to_ms(0.5));
        save_json(out.manifest_json, bad);
        AuditReport r = audit_benchmark(out.train_csv, out.test_csv, out.manifest_json);
        CHECK(!r.find("c")->pass);
    }
    SUBCASE("t_sep moved earlier fails b") {
        nlohmann::json bad = clean;
        TimestampMs t = parse_timestamp(clean["t_sep"].get<std::string>(), "iso8601");
        bad["t_sep"] = format_iso8601_ms(t - days_to_ms(2.0));
        save_json(out.manifest_json, bad);
        AuditReport r = audit_benchmark(out.train_csv, out.test_csv, out.manifest_json);
        CHECK(!r.find("b")->pass);
    }
    SUBCASE("understated duration cap fails e") {
        nlohmann::json bad = clean;
        bad["max_duration_days"] = clean["max_duration_days"].get<double>() / 3.0;
        save_json(out.manifest_json, bad);
        AuditReport r = audit_benchmark(out.train_csv, out.test_csv, out.manifest_json);
        CHECK(!r.find("e")->pass);
    }
    SUBCASE("overstated duration cap widens the zone and fails d") {
        nlohmann::json bad = clean;
        bad["max_duration_days"] = clean["max_duration_days"].get<double>() * 2.0;
        save_json(out.manifest_json, bad);
        AuditReport r = audit_benchmark(out.train_csv, out.test_csv, out.manifest_json);
        CHECK(!r.find("d")->pass);
    }
    SUBCASE("a test row copied into train fails a") {
        std::ifstream in(out.test_csv);
        std::string header, row;
        std::getline(in, header);
        std::getline(in, row);
        std::ofstream app(out.train_csv, std::ios::app);
        app << row << '\n';
        app.close();
        AuditReport r = audit_benchmark(out.train_csv, out.test_csv, out.manifest_json);
        CHECK(!r.find("a")->pass);
    }
    fs::remove_all(dir);
}

TEST_CASE("unreadable input is fatal") {
    CHECK_THROWS(audit_benchmark(fs::path("/no/such/train.csv"), fs::path("/no/such/test.csv"),
                                 fs::path("/no/such/manifest.json")));
}
