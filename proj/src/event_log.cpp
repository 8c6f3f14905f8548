#include "logbench/event_log.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "csv_util.hpp"

namespace logbench {

using detail::CsvReader;
using detail::write_csv_field;

void ColumnMapping::validate() const {
    if (case_column.empty() || activity_column.empty() || timestamp_column.empty())
        throw std::invalid_argument(
            "column mapping must name case, activity and timestamp columns");
    if (!filter_column.empty() && filter_values.empty())
        throw std::invalid_argument("row filter names a column but no values to keep");
}

std::size_t EventLog::n_events() const {
    std::size_t n = 0;
    for (const auto& c : cases) n += c.events.size();
    return n;
}

TimestampMs EventLog::first_event_ts() const {
    TimestampMs t = cases.front().start();
    for (const auto& c : cases) t = std::min(t, c.start());
    return t;
}

TimestampMs EventLog::last_event_ts() const {
    TimestampMs t = cases.front().end();
    for (const auto& c : cases) t = std::max(t, c.end());
    return t;
}

DurationMs EventLog::max_case_duration_ms() const {
    DurationMs d = 0;
    for (const auto& c : cases) d = std::max(d, c.duration_ms());
    return d;
}

const Case* EventLog::find_case(std::string_view case_id) const {
    for (const auto& c : cases)
        if (c.case_id == case_id) return &c;
    return nullptr;
}

EventLog parse_csv(std::istream& in, const ColumnMapping& mapping, std::string source_name) {
    mapping.validate();
    CsvReader reader(in, mapping.delimiter);

    std::vector<std::string> header;
    if (!reader.next_record(header))
        throw std::runtime_error(source_name + ": empty file (header row required)");

    auto column_of = [&](const std::string& name) -> std::size_t {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw std::runtime_error(source_name + ": missing column '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t case_col = column_of(mapping.case_column);
    const std::size_t act_col = column_of(mapping.activity_column);
    const std::size_t ts_col = column_of(mapping.timestamp_column);
    std::size_t filter_col = 0;
    if (!mapping.filter_column.empty()) filter_col = column_of(mapping.filter_column);

    EventLog log;
    log.source_file = std::move(source_name);
    log.mapping = mapping;
    std::vector<std::size_t> attr_cols;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i == case_col || i == act_col || i == ts_col) continue;
        log.attribute_columns.push_back(header[i]);
        attr_cols.push_back(i);
    }

    std::unordered_map<std::string, std::size_t> case_index;
    std::vector<std::string> fields;
    std::uint64_t rows = 0;
    std::uint64_t filtered = 0;
    while (reader.next_record(fields)) {
        const std::size_t row = reader.record_number();
        if (fields.size() == 1 && fields[0].empty()) continue;  // trailing blank line
        if (fields.size() != header.size())
            throw std::runtime_error(log.source_file + ": row " + std::to_string(row) + " has " +
                                     std::to_string(fields.size()) + " fields, header has " +
                                     std::to_string(header.size()));
        if (!mapping.filter_column.empty()) {
            const std::string& v = fields[filter_col];
            if (std::find(mapping.filter_values.begin(), mapping.filter_values.end(), v) ==
                mapping.filter_values.end()) {
                ++filtered;
                continue;
            }
        }
        Event ev;
        ev.case_id = fields[case_col];
        ev.activity = fields[act_col];
        if (ev.case_id.empty())
            throw std::runtime_error(log.source_file + ": row " + std::to_string(row) +
                                     ": empty case id");
        if (ev.activity.empty())
            throw std::runtime_error(log.source_file + ": row " + std::to_string(row) +
                                     ": empty activity");
        auto ts = try_parse_timestamp(fields[ts_col], mapping.timestamp_format);
        if (!ts)
            throw std::runtime_error(log.source_file + ": row " + std::to_string(row) +
                                     ": unparseable timestamp '" + fields[ts_col] + "' (format '" +
                                     mapping.timestamp_format + "')");
        ev.timestamp = *ts;
        ev.file_order = rows;
        ev.attributes.reserve(attr_cols.size());
        for (std::size_t i : attr_cols) ev.attributes.push_back(fields[i]);

        auto [it, inserted] = case_index.try_emplace(ev.case_id, log.cases.size());
        if (inserted) {
            Case c;
            c.case_id = ev.case_id;
            log.cases.push_back(std::move(c));
        }
        log.cases[it->second].events.push_back(std::move(ev));
        ++rows;
    }

    // Events arrive in file order, so a stable sort by timestamp yields the
    // (timestamp, file order) ordering.
    for (auto& c : log.cases)
        std::stable_sort(c.events.begin(), c.events.end(),
                         [](const Event& a, const Event& b) { return a.timestamp < b.timestamp; });

    log.history.push_back({"parse",
                           {{"source", log.source_file},
                            {"events", rows},
                            {"rows_filtered", filtered},
                            {"cases", log.cases.size()}}});
    return log;
}

EventLog parse_csv(const std::filesystem::path& path, const ColumnMapping& mapping) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    return parse_csv(in, mapping, path.filename().string());
}

void write_csv(const EventLog& log, std::ostream& out) {
    const char d = log.mapping.delimiter;
    write_csv_field(out, log.mapping.case_column.empty() ? "case_id" : log.mapping.case_column, d);
    out << d;
    write_csv_field(out, log.mapping.activity_column.empty() ? "activity" : log.mapping.activity_column, d);
    out << d;
    write_csv_field(out, log.mapping.timestamp_column.empty() ? "timestamp" : log.mapping.timestamp_column, d);
    for (const auto& col : log.attribute_columns) {
        out << d;
        write_csv_field(out, col, d);
    }
    out << '\n';
    for (const auto& c : log.cases) {
        for (const auto& ev : c.events) {
            write_csv_field(out, ev.case_id, d);
            out << d;
            write_csv_field(out, ev.activity, d);
            out << d;
            out << format_iso8601_ms(ev.timestamp);
            for (const auto& a : ev.attributes) {
                out << d;
                write_csv_field(out, a, d);
            }
            out << '\n';
        }
    }
}

void write_csv(const EventLog& log, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    write_csv(log, out);
}

std::string to_csv_string(const EventLog& log) {
    std::ostringstream out;
    write_csv(log, out);
    return out.str();
}

std::pair<EventLog, std::size_t> deduplicate(const EventLog& log) {
    EventLog out = log;
    std::size_t removed = 0;
    for (auto& c : out.cases) {
        std::unordered_set<std::string> seen;
        std::vector<Event> kept;
        kept.reserve(c.events.size());
        for (auto& ev : c.events) {
            std::string key = ev.activity;
            key.push_back('\x1f');
            key += std::to_string(ev.timestamp);
            for (const auto& a : ev.attributes) {
                key.push_back('\x1f');
                key += a;
            }
            if (seen.insert(std::move(key)).second)
                kept.push_back(std::move(ev));
            else
                ++removed;
        }
        c.events = std::move(kept);
    }
    out.history.push_back({"deduplicate", {{"removed", removed}}});
    return {std::move(out), removed};
}

}  // namespace logbench
