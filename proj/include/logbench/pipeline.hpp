#pragma once

// End-to-end benchmark construction:
//   parse -> deduplicate -> trim -> duration scan/choice -> long-case filter
//   -> prefix generation -> end-of-dataset debias -> temporal split -> write.
//
// The emitted manifest is the benchmark's identity document: identical
// input and configuration must yield byte-identical train.csv, test.csv and
// manifest.json.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "logbench/debias.hpp"
#include "logbench/event_log.hpp"
#include "logbench/split.hpp"
#include "logbench/trim.hpp"

namespace logbench {

inline constexpr const char* kToolName = "logbench";
inline constexpr const char* kToolVersion = "0.1.0";

struct PipelineConfig {
    std::string input;  // ignored by the in-memory overload
    ColumnMapping mapping;
    std::optional<std::string> preset;  // recorded for provenance

    std::optional<std::string> trim_start;  // bound notation ("2010-10", ...)
    std::optional<std::string> trim_end;
    TrimBounds::EndField trim_end_field = TrimBounds::EndField::CaseEnd;

    double test_fraction = 0.20;
    // Fraction of longest cases the duration scan may remove; 0 disables
    // long-case removal altogether.
    double long_case_cap = 0.05;
    bool cap_explicit = false;  // set when the cap came from config/flags
    std::optional<double> max_duration_days;  // explicit cap, skips the scan

    SplitMode mode = SplitMode::Strict;
    bool debias_test_start = true;

    std::string out_dir = "benchmark_out";

    void validate() const;  // throws std::invalid_argument
    TrimBounds trim_bounds() const;
    nlohmann::json to_json() const;  // canonical: every field materialized
    static PipelineConfig from_json(const nlohmann::json& j);
    static PipelineConfig from_json(const nlohmann::json& j, PipelineConfig base);
};

std::string config_hash(const PipelineConfig& config);  // fnv1a64 over canonical JSON

struct PipelineProducts {
    EventLog log;  // after dedupe/trim/long-case filter
    EndDebiasReport debias;
    SplitResult split;
    DurationMs applied_max_duration_ms = 0;  // zone width actually used
    bool scan_ran = false;
    std::vector<DurationScanPoint> scan;
    std::size_t duplicates_removed = 0;
    std::size_t cases_removed_by_trim = 0;
    std::size_t cases_removed_by_duration_filter = 0;
    nlohmann::json manifest;
};

// In-memory run (tests, synthetic data). `raw` stands in for the parse stage.
PipelineProducts run_pipeline(const EventLog& raw, const PipelineConfig& config);

struct PipelineOutcome {
    PipelineProducts products;
    std::filesystem::path train_csv;
    std::filesystem::path test_csv;
    std::filesystem::path manifest_json;
};

// Parses config.input, runs the pipeline and writes train.csv / test.csv /
// manifest.json under config.out_dir. Partial outputs are removed on error.
PipelineOutcome run_pipeline_to_files(const PipelineConfig& config);
PipelineOutcome run_pipeline_to_files(const EventLog& raw, const PipelineConfig& config);

}  // namespace logbench
