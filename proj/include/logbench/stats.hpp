#pragma once

// Dataset statistics and monthly time profiles.

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "logbench/event_log.hpp"

namespace logbench {

struct DatasetStats {
    std::size_t n_cases = 0;
    std::size_t n_events = 0;
    double median_events_per_case = 0.0;  // even counts: mean of the two middle values
    double mean_events_per_case = 0.0;
    double median_duration_days = 0.0;
    double mean_duration_days = 0.0;
    double max_duration_days = 0.0;
    double span_days = 0.0;  // last event - first event
};

struct MonthlyBucket {
    std::int64_t month_idx = 0;  // year * 12 + month - 1
    std::size_t case_starts = 0;
    double mean_duration_days = 0.0;  // of cases starting this month; 0 when none
    std::size_t events = 0;
};

struct MonthlyProfile {
    std::vector<MonthlyBucket> months;  // contiguous, zero-filled, first..last event month

    std::size_t total_case_starts() const;
    std::size_t total_events() const;
};

DatasetStats compute_stats(const EventLog& log);  // throws std::invalid_argument on empty log
MonthlyProfile monthly_profile(const EventLog& log);

nlohmann::json stats_to_json(const DatasetStats& stats, const MonthlyProfile& profile);
// Aligned text rendering with the same column order as the JSON fields:
// cases, events, median events, mean events, median days, mean days,
// max days, dataset days.
std::string stats_table(const std::string& name, const DatasetStats& stats);

}  // namespace logbench
