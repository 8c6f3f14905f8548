#pragma once

// Seeded synthetic event-log generator with ground truth, used by the
// property suites and demos. Same seed, same bytes: randomness comes from a
// fixed-width mt19937_64 stream through our own distribution helpers, never
// from implementation-defined std::*_distribution.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "logbench/event_log.hpp"
#include "logbench/time_util.hpp"

namespace logbench {

enum class DurationModel { Fixed, Uniform, Exponential, LogNormal };

struct SynthSpec {
    std::uint64_t seed = 1;
    std::size_t n_cases = 100;

    DurationModel duration_model = DurationModel::Exponential;
    double duration_mean_days = 2.0;   // Fixed / Exponential / LogNormal median scale
    double duration_min_days = 0.5;    // Uniform
    double duration_max_days = 4.0;    // Uniform
    double duration_sigma = 0.75;      // LogNormal

    double arrival_rate_per_day = 10.0;
    std::size_t n_activities = 6;
    std::size_t min_events = 2;
    std::size_t max_events = 8;
    TimestampMs first_arrival = 1'609'459'200'000;  // 2021-01-01T00:00:00Z

    // "", "heavy_straddling", "one_pathological_long_case",
    // "leading_sparse_months"
    std::string scenario;

    void validate() const;  // throws std::invalid_argument
};

struct GroundTruthCase {
    std::string case_id;
    TimestampMs start = 0;
    TimestampMs end = 0;
    double duration_days = 0.0;
    std::size_t n_events = 0;
};

struct GroundTruth {
    std::vector<GroundTruthCase> cases;
    std::map<std::int64_t, std::size_t> monthly_case_starts;  // month_idx -> count

    nlohmann::json to_json() const;
};

std::pair<EventLog, GroundTruth> generate(const SynthSpec& spec);

std::vector<std::string> known_scenarios();

}  // namespace logbench
