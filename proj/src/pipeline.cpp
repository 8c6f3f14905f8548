#include "logbench/pipeline.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "logbench/errors.hpp"
#include "logbench/prefix.hpp"

namespace logbench {

namespace {

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

template <typename F>
auto stage(const char* name, F&& f) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

nlohmann::json opt_str(const std::optional<std::string>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

void PipelineConfig::validate() const {
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw std::invalid_argument("test_fraction must be in (0,1)");
    if (long_case_cap < 0.0 || long_case_cap >= 1.0)
        throw std::invalid_argument("long_case_cap must be in [0,1)");
    if (max_duration_days && cap_explicit)
        throw std::invalid_argument(
            "max_duration_days and long_case_cap are mutually exclusive; set one");
    if (max_duration_days && *max_duration_days <= 0.0)
        throw std::invalid_argument("max_duration_days must be positive");
    trim_bounds();  // validates bound ordering
}

TrimBounds PipelineConfig::trim_bounds() const {
    return TrimBounds::from_strings(trim_start, trim_end, trim_end_field);
}

// Canonical form: everything that affects the produced sets. Execution
// details (the output directory) are deliberately absent so reruns into
// different locations stay byte-identical.
nlohmann::json PipelineConfig::to_json() const {
    nlohmann::json j;
    j["input"] = input;
    j["mapping"] = {{"case_column", mapping.case_column},
                    {"activity_column", mapping.activity_column},
                    {"timestamp_column", mapping.timestamp_column},
                    {"timestamp_format", mapping.timestamp_format},
                    {"delimiter", std::string(1, mapping.delimiter)},
                    {"filter_column", mapping.filter_column},
                    {"filter_values", mapping.filter_values}};
    j["preset"] = opt_str(preset);
    j["trim"] = {{"start_on_or_after", opt_str(trim_start)},
                 {"end_on_or_before", opt_str(trim_end)},
                 {"end_field",
                  trim_end_field == TrimBounds::EndField::CaseEnd ? "case_end" : "case_start"}};
    j["test_fraction"] = test_fraction;
    j["long_case_cap"] = long_case_cap;
    j["max_duration_days"] =
        max_duration_days ? nlohmann::json(*max_duration_days) : nlohmann::json(nullptr);
    j["split_mode"] = mode == SplitMode::Strict ? "strict" : "regular";
    j["debias_test_start"] = debias_test_start;
    return j;
}

PipelineConfig PipelineConfig::from_json(const nlohmann::json& j) {
    return from_json(j, PipelineConfig{});
}

PipelineConfig PipelineConfig::from_json(const nlohmann::json& j, PipelineConfig base) {
    PipelineConfig c = std::move(base);
    if (j.contains("input")) c.input = j["input"].get<std::string>();
    if (j.contains("mapping")) {
        const auto& m = j["mapping"];
        if (m.contains("case_column")) c.mapping.case_column = m["case_column"].get<std::string>();
        if (m.contains("activity_column"))
            c.mapping.activity_column = m["activity_column"].get<std::string>();
        if (m.contains("timestamp_column"))
            c.mapping.timestamp_column = m["timestamp_column"].get<std::string>();
        if (m.contains("timestamp_format"))
            c.mapping.timestamp_format = m["timestamp_format"].get<std::string>();
        if (m.contains("delimiter")) {
            std::string d = m["delimiter"].get<std::string>();
            if (d.size() != 1) throw std::invalid_argument("config: delimiter must be one character");
            c.mapping.delimiter = d[0];
        }
        if (m.contains("filter_column"))
            c.mapping.filter_column = m["filter_column"].get<std::string>();
        if (m.contains("filter_values"))
            c.mapping.filter_values = m["filter_values"].get<std::vector<std::string>>();
    }
    if (j.contains("preset") && !j["preset"].is_null())
        c.preset = j["preset"].get<std::string>();
    if (j.contains("trim")) {
        const auto& t = j["trim"];
        if (t.contains("start_on_or_after") && !t["start_on_or_after"].is_null())
            c.trim_start = t["start_on_or_after"].get<std::string>();
        if (t.contains("end_on_or_before") && !t["end_on_or_before"].is_null())
            c.trim_end = t["end_on_or_before"].get<std::string>();
        if (t.contains("end_field")) {
            std::string f = t["end_field"].get<std::string>();
            if (f == "case_end")
                c.trim_end_field = TrimBounds::EndField::CaseEnd;
            else if (f == "case_start")
                c.trim_end_field = TrimBounds::EndField::CaseStart;
            else
                throw std::invalid_argument("config: end_field must be case_end or case_start");
        }
    }
    if (j.contains("test_fraction")) c.test_fraction = j["test_fraction"].get<double>();
    if (j.contains("long_case_cap")) {
        c.long_case_cap = j["long_case_cap"].get<double>();
        c.cap_explicit = true;
    }
    if (j.contains("max_duration_days") && !j["max_duration_days"].is_null())
        c.max_duration_days = j["max_duration_days"].get<double>();
    if (j.contains("split_mode")) {
        std::string m = j["split_mode"].get<std::string>();
        if (m == "strict")
            c.mode = SplitMode::Strict;
        else if (m == "regular")
            c.mode = SplitMode::Regular;
        else
            throw std::invalid_argument("config: split_mode must be strict or regular");
    }
    if (j.contains("debias_test_start")) c.debias_test_start = j["debias_test_start"].get<bool>();
    if (j.contains("out_dir")) c.out_dir = j["out_dir"].get<std::string>();
    return c;
}

std::string config_hash(const PipelineConfig& config) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(config.to_json().dump())));
    return buf;
}

PipelineProducts run_pipeline(const EventLog& raw, const PipelineConfig& config) {
    config.validate();
    PipelineProducts out;

    stage("deduplicate", [&] {
        auto [log, removed] = deduplicate(raw);
        out.log = std::move(log);
        out.duplicates_removed = removed;
        return 0;
    });

    stage("trim_chronological", [&] {
        auto [log, removed] = trim_chronological(out.log, config.trim_bounds());
        out.log = std::move(log);
        out.cases_removed_by_trim = removed;
        return 0;
    });

    std::optional<DurationMs> cap_ms;
    if (config.max_duration_days) {
        cap_ms = days_to_ms(*config.max_duration_days);
    } else if (config.long_case_cap > 0.0) {
        stage("scan_durations", [&] {
            out.scan = scan_durations(out.log, config.test_fraction, config.long_case_cap);
            cap_ms = choose_max_duration(out.scan);
            out.scan_ran = true;
            return 0;
        });
    }

    if (cap_ms) {
        stage("filter_long_cases", [&] {
            auto [log, removed] = filter_long_cases(out.log, *cap_ms);
            out.log = std::move(log);
            out.cases_removed_by_duration_filter = removed;
            return 0;
        });
    }

    std::vector<Prefix> prefixes =
        stage("generate_prefixes", [&] { return generate_prefixes(out.log); });

    std::vector<Prefix> survivors = stage("debias_end", [&] {
        auto [kept, report] = debias_end(out.log, prefixes);
        out.debias = report;
        return kept;
    });
    out.applied_max_duration_ms = out.debias.zone_width_ms;

    stage("split", [&] {
        const TimestampMs t_sep = separation_time(out.log, config.test_fraction);
        out.split = config.mode == SplitMode::Strict
                        ? split_strict(out.log, survivors, t_sep, config.debias_test_start)
                        : split_regular(out.log, survivors, t_sep);
        return 0;
    });

    // Manifest: the benchmark's identity document.
    TimingReport timing = report_timing(out.split, out.log);
    nlohmann::json history = nlohmann::json::array();
    for (const auto& h : out.log.history) {
        nlohmann::json entry = h.params;
        entry["step"] = h.step;
        history.push_back(std::move(entry));
    }
    history.push_back({{"step", "debias_end"},
                       {"zone_width_days", out.debias.zone_width_days},
                       {"dropped_prefixes", out.debias.dropped_prefixes},
                       {"dropped_cases", out.debias.dropped_cases},
                       {"truncated_cases", out.debias.truncated_cases}});
    history.push_back({{"step", "split"},
                       {"mode", config.mode == SplitMode::Strict ? "strict" : "regular"},
                       {"debias_test_start", config.debias_test_start},
                       {"t_sep", format_iso8601_ms(out.split.separation_time)}});

    const SplitAccounting& a = out.split.accounting;
    out.manifest = {
        {"tool", kToolName},
        {"tool_version", kToolVersion},
        {"config_hash", config_hash(config)},
        {"config", config.to_json()},
        {"source", out.log.source_file},
        {"t_sep", format_iso8601_ms(out.split.separation_time)},
        {"dataset_start", format_iso8601_ms(out.log.first_event_ts())},
        {"dataset_end", format_iso8601_ms(out.debias.dataset_end)},
        {"benchmark_end", format_iso8601_ms(out.debias.zone_start)},
        {"max_duration_days", to_days(out.applied_max_duration_ms)},
        {"configured_max_duration_days", config.max_duration_days
                                             ? nlohmann::json(*config.max_duration_days)
                                             : nlohmann::json(nullptr)},
        {"test_fraction", config.test_fraction},
        {"split_mode", config.mode == SplitMode::Strict ? "strict" : "regular"},
        {"debias_test_start", config.debias_test_start},
        {"accounting",
         {{"train_cases", a.train_cases},
          {"test_cases_all", a.test_cases_all},
          {"test_missing_short_prefixes", a.test_missing_short_prefixes},
          {"test_missing_long_prefixes", a.test_missing_long_prefixes},
          {"test_complete", a.test_complete},
          {"total_cases", a.total_cases},
          {"full_case_equivalent", a.full_case_equivalent}}},
        {"counts",
         {{"train_prefixes", out.split.train_prefixes.size()},
          {"test_prefixes", out.split.test_prefixes.size()},
          {"duplicates_removed", out.duplicates_removed},
          {"cases_removed_by_trim", out.cases_removed_by_trim},
          {"cases_removed_by_duration_filter", out.cases_removed_by_duration_filter},
          {"prefixes_dropped_end_debias", out.debias.dropped_prefixes},
          {"cases_dropped_end_debias", out.debias.dropped_cases},
          {"cases_truncated_end_debias", out.debias.truncated_cases}}},
        {"timing",
         {{"max_case_duration_days", timing.max_case_duration_days},
          {"span_days", timing.span_days},
          {"test_set_start", format_iso8601_date(timing.test_start)},
          {"dataset_end_date", format_iso8601_date(timing.dataset_end)}}},
        {"history", std::move(history)}};
    return out;
}

PipelineOutcome run_pipeline_to_files(const EventLog& raw, const PipelineConfig& config) {
    PipelineOutcome outcome;
    outcome.products = run_pipeline(raw, config);

    const std::filesystem::path dir(config.out_dir);
    outcome.train_csv = dir / "train.csv";
    outcome.test_csv = dir / "test.csv";
    outcome.manifest_json = dir / "manifest.json";
    try {
        stage("write", [&] {
            std::filesystem::create_directories(dir);
            write_prefix_csv(outcome.products.split.train_prefixes, outcome.train_csv);
            write_prefix_csv(outcome.products.split.test_prefixes, outcome.test_csv);
            std::ofstream mf(outcome.manifest_json, std::ios::binary);
            if (!mf)
                throw std::runtime_error("cannot write '" + outcome.manifest_json.string() + "'");
            mf << outcome.products.manifest.dump(2) << '\n';
            if (!mf) throw std::runtime_error("write failed: " + outcome.manifest_json.string());
            return 0;
        });
    } catch (...) {
        std::error_code ec;
        std::filesystem::remove(outcome.train_csv, ec);
        std::filesystem::remove(outcome.test_csv, ec);
        std::filesystem::remove(outcome.manifest_json, ec);
        throw;
    }
    return outcome;
}

PipelineOutcome run_pipeline_to_files(const PipelineConfig& config) {
    EventLog raw = stage("parse", [&] {
        if (config.input.empty()) throw std::runtime_error("no input file configured");
        return parse_csv(std::filesystem::path(config.input), config.mapping);
    });
    return run_pipeline_to_files(raw, config);
}

}  // namespace logbench
