#pragma once

// Prefixes and their remaining-time targets.
//
// A prefix is the first k events of a case; its target is the time from
// event k to the case's last event, in fractional days. One prefix per
// event, so prefix count == event count for a freshly labeled log.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "logbench/event_log.hpp"
#include "logbench/time_util.hpp"

namespace logbench {

struct Prefix {
    std::string case_id;
    std::uint32_t length = 1;       // k >= 1
    std::uint32_t case_length = 1;  // total events of the owning case
    TimestampMs end_timestamp = 0;  // timestamp of event k
    std::string activity;           // activity of event k
    double elapsed_days = 0.0;      // event k timestamp - case start
    double target_days = 0.0;       // case end - event k timestamp
};

// All cases must be complete (end-of-dataset debiasing is the caller's job).
std::vector<Prefix> generate_prefixes(const EventLog& log);

// Benchmark file schema:
//   case_id,prefix_length,event_index,activity,timestamp,elapsed_days,target_days
// One row per retained prefix, described by its final event. From a single
// row the owning case's start (timestamp - elapsed) and end
// (timestamp + target) are recoverable, which is what the auditor relies on.
void write_prefix_csv(const std::vector<Prefix>& prefixes, std::ostream& out);
void write_prefix_csv(const std::vector<Prefix>& prefixes, const std::filesystem::path& path);
std::string to_prefix_csv_string(const std::vector<Prefix>& prefixes);

struct PrefixRow {
    std::string case_id;
    std::uint32_t prefix_length = 1;
    std::uint32_t event_index = 1;
    std::string activity;
    TimestampMs timestamp = 0;
    double elapsed_days = 0.0;
    double target_days = 0.0;
};

std::vector<PrefixRow> read_prefix_csv(std::istream& in, const std::string& source_name);
std::vector<PrefixRow> read_prefix_csv(const std::filesystem::path& path);

}  // namespace logbench
