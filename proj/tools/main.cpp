// logbench: build leakage-free temporal benchmark train/test sets from raw
// event-log CSVs, audit them, and measure the impact of each preprocessing
// measure with a deterministic baseline predictor.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "logbench/audit.hpp"
#include "logbench/errors.hpp"
#include "logbench/eval.hpp"
#include "logbench/pipeline.hpp"
#include "logbench/presets.hpp"
#include "logbench/stats.hpp"
#include "logbench/synth.hpp"
#include "logbench/trim.hpp"

namespace lb = logbench;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailure = 2;

struct GlobalOptions {
    std::string config_file;
    std::string preset;
    std::string presets_file;
    std::string out_dir;
    std::uint64_t seed = 1;
};

struct DatasetFlags {
    std::string input;
    std::string case_col, activity_col, time_col, time_format, delimiter;
    std::string filter_col;
    std::vector<std::string> filter_values;
    std::string trim_start, trim_end, trim_end_field;
    double test_fraction = 0.0;
    double cap = -1.0;
    double max_duration = 0.0;
    std::string mode;
    bool no_test_start_debias = false;
};

void add_dataset_flags(CLI::App* cmd, DatasetFlags& f) {
    cmd->add_option("input", f.input, "event-log CSV (may also come from --config)");
    cmd->add_option("--case-col", f.case_col, "case id column");
    cmd->add_option("--activity-col", f.activity_col, "activity column");
    cmd->add_option("--time-col", f.time_col, "timestamp column");
    cmd->add_option("--time-format", f.time_format,
                    "timestamp format ('iso8601' or %Y/%m/%d/%H/%M/%S/%z pattern)");
    cmd->add_option("--delimiter", f.delimiter, "field delimiter (default ',')");
    cmd->add_option("--filter-col", f.filter_col, "keep only rows matching --filter-values");
    cmd->add_option("--filter-values", f.filter_values, "values kept by --filter-col");
    cmd->add_option("--trim-start", f.trim_start, "keep cases starting on/after (YYYY-MM[-DD])");
    cmd->add_option("--trim-end", f.trim_end, "keep cases ending on/before (YYYY-MM[-DD])");
    cmd->add_option("--trim-end-field", f.trim_end_field,
                    "what the end bound constrains: case_end (default) or case_start");
    cmd->add_option("--test-fraction", f.test_fraction, "chronological test share (default 0.20)");
    cmd->add_option("--cap", f.cap, "max fraction of longest cases the scan may drop (default 0.05; 0 disables)");
    cmd->add_option("--max-duration", f.max_duration,
                    "explicit case-duration cap in days (skips the scan)");
    cmd->add_option("--mode", f.mode, "split mode: strict (default) or regular");
    cmd->add_flag("--no-test-start-debias", f.no_test_start_debias,
                  "do not add straddler prefixes to the test set");
}

lb::PipelineConfig resolve_config(const GlobalOptions& global, const DatasetFlags& flags,
                                  const CLI::App* cmd) {
    nlohmann::json file_json = nlohmann::json::object();
    if (!global.config_file.empty()) {
        std::ifstream in(global.config_file);
        if (!in) throw std::invalid_argument("cannot open config '" + global.config_file + "'");
        try {
            file_json = nlohmann::json::parse(in);
        } catch (const std::exception& e) {
            throw std::invalid_argument("config '" + global.config_file + "': " + e.what());
        }
    }

    std::string preset_name = global.preset;
    if (preset_name.empty() && file_json.contains("preset") && !file_json["preset"].is_null())
        preset_name = file_json["preset"].get<std::string>();

    lb::PipelineConfig base;
    if (!preset_name.empty()) {
        auto presets = global.presets_file.empty() ? lb::builtin_presets()
                                                   : lb::load_presets(global.presets_file);
        const lb::Preset& p = lb::find_preset(presets, preset_name);
        base.mapping = p.mapping;
        base.trim_start = p.trim_start;
        base.trim_end = p.trim_end;
        base.preset = preset_name;
    }

    lb::PipelineConfig c = lb::PipelineConfig::from_json(file_json, std::move(base));

    auto set_if = [&](const char* flag, auto&& apply) {
        if (cmd->count(flag) > 0) apply();
    };
    if (!flags.input.empty()) c.input = flags.input;
    set_if("--case-col", [&] { c.mapping.case_column = flags.case_col; });
    set_if("--activity-col", [&] { c.mapping.activity_column = flags.activity_col; });
    set_if("--time-col", [&] { c.mapping.timestamp_column = flags.time_col; });
    set_if("--time-format", [&] { c.mapping.timestamp_format = flags.time_format; });
    set_if("--delimiter", [&] {
        if (flags.delimiter.size() != 1)
            throw std::invalid_argument("--delimiter must be one character");
        c.mapping.delimiter = flags.delimiter[0];
    });
    set_if("--filter-col", [&] { c.mapping.filter_column = flags.filter_col; });
    set_if("--filter-values", [&] { c.mapping.filter_values = flags.filter_values; });
    set_if("--trim-start", [&] { c.trim_start = flags.trim_start; });
    set_if("--trim-end", [&] { c.trim_end = flags.trim_end; });
    set_if("--trim-end-field", [&] {
        if (flags.trim_end_field == "case_end")
            c.trim_end_field = lb::TrimBounds::EndField::CaseEnd;
        else if (flags.trim_end_field == "case_start")
            c.trim_end_field = lb::TrimBounds::EndField::CaseStart;
        else
            throw std::invalid_argument("--trim-end-field must be case_end or case_start");
    });
    set_if("--test-fraction", [&] { c.test_fraction = flags.test_fraction; });
    set_if("--cap", [&] {
        c.long_case_cap = flags.cap;
        c.cap_explicit = true;
    });
    set_if("--max-duration", [&] { c.max_duration_days = flags.max_duration; });
    set_if("--mode", [&] {
        if (flags.mode == "strict")
            c.mode = lb::SplitMode::Strict;
        else if (flags.mode == "regular")
            c.mode = lb::SplitMode::Regular;
        else
            throw std::invalid_argument("--mode must be strict or regular");
    });
    if (flags.no_test_start_debias) c.debias_test_start = false;
    if (!global.out_dir.empty()) c.out_dir = global.out_dir;

    if (c.input.empty()) throw std::invalid_argument("no input file (positional or config)");
    c.mapping.validate();
    return c;
}

lb::EventLog load_log(const lb::PipelineConfig& c) {
    return lb::parse_csv(std::filesystem::path(c.input), c.mapping);
}

lb::EventLog load_trimmed(const lb::PipelineConfig& c) {
    lb::EventLog log = load_log(c);
    return lb::trim_chronological(log, c.trim_bounds()).first;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"benchmark-set construction for remaining-time prediction on event logs"};
    app.require_subcommand(1);
    GlobalOptions global;
    app.add_option("--config", global.config_file, "JSON config file")->expected(1);
    app.add_option("--preset", global.preset, "dataset preset (e.g. bpic2012)");
    app.add_option("--presets", global.presets_file, "alternative presets JSON file");
    app.add_option("--out", global.out_dir, "output directory");
    app.add_option("--seed", global.seed, "random seed (synth)");

    // stats
    auto* stats_cmd = app.add_subcommand("stats", "dataset statistics and monthly profile");
    DatasetFlags stats_flags;
    add_dataset_flags(stats_cmd, stats_flags);
    bool stats_table_flag = false;
    bool stats_no_trim = false;
    stats_cmd->add_flag("--table", stats_table_flag, "render an aligned text table");
    stats_cmd->add_flag("--no-trim", stats_no_trim, "ignore configured trim bounds");

    // suggest-trim
    auto* suggest_cmd =
        app.add_subcommand("suggest-trim", "propose chronological trim bounds (advisory)");
    DatasetFlags suggest_flags;
    add_dataset_flags(suggest_cmd, suggest_flags);
    double suggest_ratio = 0.1;
    suggest_cmd->add_option("--ratio", suggest_ratio, "sparsity ratio vs median month (default 0.1)");

    // scan-durations
    auto* scan_cmd =
        app.add_subcommand("scan-durations", "training/test sizes per duration-cap candidate");
    DatasetFlags scan_flags;
    add_dataset_flags(scan_cmd, scan_flags);
    std::string scan_csv;
    scan_cmd->add_option("--csv", scan_csv, "write the scan as CSV to this file");

    // preprocess
    auto* prep_cmd =
        app.add_subcommand("preprocess", "build train.csv/test.csv/manifest.json");
    DatasetFlags prep_flags;
    add_dataset_flags(prep_cmd, prep_flags);

    // audit
    auto* audit_cmd = app.add_subcommand("audit", "verify a produced benchmark");
    std::string audit_train, audit_test, audit_manifest;
    audit_cmd->add_option("train", audit_train, "train.csv")->required();
    audit_cmd->add_option("test", audit_test, "test.csv")->required();
    audit_cmd->add_option("manifest", audit_manifest, "manifest.json")->required();

    // evaluate
    auto* eval_cmd =
        app.add_subcommand("evaluate", "seven-variant preprocessing-impact ladder");
    DatasetFlags eval_flags;
    add_dataset_flags(eval_cmd, eval_flags);
    std::string eval_csv, eval_json;
    eval_cmd->add_option("--csv", eval_csv, "write the ladder as CSV to this file");
    eval_cmd->add_option("--json", eval_json, "write the ladder as JSON to this file");

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic log with ground truth");
    lb::SynthSpec synth_spec;
    std::string synth_scenario, synth_csv = "synthetic.csv", synth_truth = "synthetic_truth.json";
    synth_cmd->add_option("--cases", synth_spec.n_cases, "number of cases (default 100)");
    synth_cmd->add_option("--scenario", synth_scenario,
                          "heavy_straddling | one_pathological_long_case | leading_sparse_months");
    synth_cmd->add_option("--rate", synth_spec.arrival_rate_per_day, "case arrivals per day");
    synth_cmd->add_option("--duration-mean", synth_spec.duration_mean_days,
                          "mean case duration in days");
    synth_cmd->add_option("--activities", synth_spec.n_activities, "activity pool size");
    synth_cmd->add_option("--min-events", synth_spec.min_events, "min events per case");
    synth_cmd->add_option("--max-events", synth_spec.max_events, "max events per case");
    synth_cmd->add_option("--csv", synth_csv, "output CSV path");
    synth_cmd->add_option("--truth", synth_truth, "ground-truth JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (stats_cmd->parsed()) {
            lb::PipelineConfig c = resolve_config(global, stats_flags, stats_cmd);
            lb::EventLog log = stats_no_trim ? load_log(c) : load_trimmed(c);
            lb::DatasetStats s = lb::compute_stats(log);
            lb::MonthlyProfile profile = lb::monthly_profile(log);
            if (stats_table_flag)
                std::cout << lb::stats_table(c.input, s);
            else
                std::cout << lb::stats_to_json(s, profile).dump(2) << '\n';
        } else if (suggest_cmd->parsed()) {
            lb::PipelineConfig c = resolve_config(global, suggest_flags, suggest_cmd);
            lb::EventLog log = load_log(c);
            lb::TrimBounds bounds = lb::suggest_trim(lb::monthly_profile(log), suggest_ratio);
            nlohmann::json out;
            out["start_on_or_after"] = bounds.start_on_or_after
                                           ? nlohmann::json(lb::format_iso8601_ms(*bounds.start_on_or_after))
                                           : nlohmann::json(nullptr);
            out["end_on_or_before"] = bounds.end_on_or_before
                                          ? nlohmann::json(lb::format_iso8601_ms(*bounds.end_on_or_before))
                                          : nlohmann::json(nullptr);
            std::cout << out.dump(2) << '\n';
        } else if (scan_cmd->parsed()) {
            lb::PipelineConfig c = resolve_config(global, scan_flags, scan_cmd);
            lb::EventLog log = lb::deduplicate(load_trimmed(c)).first;
            double cap = c.long_case_cap > 0.0 ? c.long_case_cap : 0.05;
            auto scan = lb::scan_durations(log, c.test_fraction, cap);
            std::ostringstream out;
            out << "d,removed_fraction,train_cases,train_events,test_cases,test_events\n";
            for (const auto& p : scan) {
                char buf[64];
                std::snprintf(buf, sizeof(buf), "%.6f,%.6f,", p.max_duration_days,
                              p.removed_case_fraction);
                out << buf << p.train_cases << ',' << p.train_events << ',' << p.test_cases << ','
                    << p.test_events << '\n';
            }
            if (scan_csv.empty())
                std::cout << out.str();
            else
                write_text(scan_csv, out.str());
        } else if (prep_cmd->parsed()) {
            lb::PipelineConfig c = resolve_config(global, prep_flags, prep_cmd);
            lb::PipelineOutcome outcome = lb::run_pipeline_to_files(c);
            std::cout << "wrote " << outcome.train_csv.string() << ", "
                      << outcome.test_csv.string() << ", " << outcome.manifest_json.string()
                      << '\n';
            const auto& acc = outcome.products.manifest["accounting"];
            std::cout << "train cases " << acc["train_cases"] << ", test cases "
                      << acc["test_cases_all"] << ", t_sep "
                      << outcome.products.manifest["t_sep"].get<std::string>() << '\n';
        } else if (audit_cmd->parsed()) {
            lb::AuditReport report = lb::audit_benchmark(audit_train, audit_test, audit_manifest);
            std::cout << report.to_json().dump(2) << '\n';
            if (!report.all_pass) return kExitFailure;
        } else if (eval_cmd->parsed()) {
            lb::PipelineConfig c = resolve_config(global, eval_flags, eval_cmd);
            lb::EventLog raw = load_log(c);
            lb::LadderConfig lc;
            lc.trim = c.trim_bounds();
            lc.benchmark_test_fraction = c.test_fraction;
            lc.long_case_cap = c.long_case_cap > 0.0 ? c.long_case_cap : 0.05;
            if (c.max_duration_days) lc.max_duration_override = lb::days_to_ms(*c.max_duration_days);
            auto rows = lb::run_ladder(raw, lc);
            std::string csv = lb::ladder_csv(rows);
            if (!eval_csv.empty()) write_text(eval_csv, csv);
            if (!eval_json.empty()) write_text(eval_json, lb::ladder_json(rows).dump(2) + "\n");
            std::cout << csv;
        } else if (synth_cmd->parsed()) {
            synth_spec.seed = global.seed;
            synth_spec.scenario = synth_scenario;
            auto [log, truth] = lb::generate(synth_spec);
            if (!global.out_dir.empty()) {
                std::filesystem::create_directories(global.out_dir);
                synth_csv = (std::filesystem::path(global.out_dir) / synth_csv).string();
                synth_truth = (std::filesystem::path(global.out_dir) / synth_truth).string();
            }
            lb::write_csv(log, std::filesystem::path(synth_csv));
            write_text(synth_truth, truth.to_json().dump(2) + "\n");
            std::cout << "wrote " << synth_csv << " (" << log.n_cases() << " cases, "
                      << log.n_events() << " events) and " << synth_truth << '\n';
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}
