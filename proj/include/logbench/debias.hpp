#pragma once

// End-of-dataset debiasing and long-case removal.
//
// Only completed cases can carry targets, so the terminal window of width
// equal to the longest case duration is biased toward short cases: every
// prefix ending inside that window is rejected. One pathological long case
// widens the window enough to wipe out the training data, which is why a
// duration cap is scanned for and applied before the window is computed.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "logbench/event_log.hpp"
#include "logbench/prefix.hpp"
#include "logbench/time_util.hpp"

namespace logbench {

struct EndDebiasReport {
    TimestampMs dataset_end = 0;       // last event of the input log
    TimestampMs zone_start = 0;        // dataset_end - zone_width
    DurationMs zone_width_ms = 0;
    double zone_width_days = 0.0;
    std::size_t dropped_cases = 0;     // lost every prefix
    std::size_t truncated_cases = 0;   // lost only their longer prefixes
    std::size_t dropped_prefixes = 0;
};

// Drops every prefix with end_timestamp >= dataset_end - zone_width (the
// boundary instant is dropped). Cases keeping at least one prefix stay.
// zone_width defaults to the longest case duration in `log`. Throws when no
// prefix survives, naming the culprit longest case.
std::pair<std::vector<Prefix>, EndDebiasReport> debias_end(
    const EventLog& log, const std::vector<Prefix>& prefixes,
    std::optional<DurationMs> zone_width_override = std::nullopt);

// Removes whole cases with duration > max_duration. Throws when nothing is
// left.
std::pair<EventLog, std::size_t> filter_long_cases(const EventLog& log, DurationMs max_duration);

struct DurationScanPoint {
    DurationMs max_duration_ms = 0;
    double max_duration_days = 0.0;
    double removed_case_fraction = 0.0;  // cases with duration > candidate
    std::size_t train_cases = 0;
    std::size_t train_events = 0;  // retained training prefixes
    std::size_t test_cases = 0;
    std::size_t test_events = 0;
    bool feasible = true;  // false when the candidate annihilates a set
    std::string note;
};

// Evaluates, in increasing order, every distinct case duration that removes
// at most `cap` of the cases (the overall maximum always qualifies). Each
// candidate runs filter -> prefix generation -> end debias -> strict split
// with test-start debias at `test_fraction`.
std::vector<DurationScanPoint> scan_durations(const EventLog& log, double test_fraction,
                                              double cap = 0.05);

// The candidate maximizing train_cases; ties go to the larger duration.
DurationMs choose_max_duration(const std::vector<DurationScanPoint>& scan);

}  // namespace logbench
