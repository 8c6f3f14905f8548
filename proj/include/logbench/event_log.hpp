#pragma once

// Event-log data model and CSV ingestion.
//
// An EventLog is immutable once built: every transformation returns a new
// log and appends a history entry, so the provenance of a benchmark can be
// reconstructed from its manifest.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "logbench/time_util.hpp"

namespace logbench {

struct Event {
    std::string case_id;
    std::string activity;
    TimestampMs timestamp = 0;
    std::uint64_t file_order = 0;            // row index in the source file; tie-break for equal timestamps
    std::vector<std::string> attributes;     // aligned with EventLog::attribute_columns
};

struct Case {
    std::string case_id;
    std::vector<Event> events;  // sorted by (timestamp, file_order), never empty

    TimestampMs start() const { return events.front().timestamp; }
    TimestampMs end() const { return events.back().timestamp; }
    DurationMs duration_ms() const { return end() - start(); }
    double duration_days() const { return to_days(duration_ms()); }
};

struct ColumnMapping {
    std::string case_column;
    std::string activity_column;
    std::string timestamp_column;
    std::string timestamp_format = "iso8601";
    char delimiter = ',';
    // Optional row filter (e.g. keep only one lifecycle transition).
    std::string filter_column;
    std::vector<std::string> filter_values;

    void validate() const;  // throws std::invalid_argument
};

struct HistoryEntry {
    std::string step;
    nlohmann::json params;
};

struct EventLog {
    std::vector<Case> cases;  // order of first appearance in the source
    std::vector<std::string> attribute_columns;
    std::string source_file;
    ColumnMapping mapping;
    std::vector<HistoryEntry> history;

    std::size_t n_cases() const { return cases.size(); }
    std::size_t n_events() const;
    bool empty() const { return cases.empty(); }

    TimestampMs first_event_ts() const;  // min over all events
    TimestampMs last_event_ts() const;   // max over all events
    DurationMs max_case_duration_ms() const;

    const Case* find_case(std::string_view case_id) const;
};

// Parses a delimited file with a header row. Strict: a missing mapped
// column, a malformed row, an empty case id/activity or an unparseable
// timestamp aborts the parse with the offending row number.
EventLog parse_csv(const std::filesystem::path& path, const ColumnMapping& mapping);
EventLog parse_csv(std::istream& in, const ColumnMapping& mapping, std::string source_name);

void write_csv(const EventLog& log, std::ostream& out);
void write_csv(const EventLog& log, const std::filesystem::path& path);
std::string to_csv_string(const EventLog& log);

// Collapses events identical in every column (case id, activity, timestamp
// and all attributes) to their first occurrence.
std::pair<EventLog, std::size_t> deduplicate(const EventLog& log);

}  // namespace logbench
