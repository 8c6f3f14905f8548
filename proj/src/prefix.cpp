#include "logbench/prefix.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "csv_util.hpp"

namespace logbench {

namespace {

// Nine decimals keeps millisecond resolution exact (1 ms ~ 1.16e-8 days).
std::string format_days(double days) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9f", days);
    return buf;
}

double parse_double(const std::string& s, const std::string& ctx) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw std::runtime_error(ctx + ": bad number '" + s + "'");
    return v;
}

std::uint32_t parse_u32(const std::string& s, const std::string& ctx) {
    std::uint32_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw std::runtime_error(ctx + ": bad integer '" + s + "'");
    return v;
}

constexpr std::string_view kPrefixHeader =
    "case_id,prefix_length,event_index,activity,timestamp,elapsed_days,target_days";

}  // namespace

std::vector<Prefix> generate_prefixes(const EventLog& log) {
    std::vector<Prefix> out;
    out.reserve(log.n_events());
    for (const auto& c : log.cases) {
        const TimestampMs start = c.start();
        const TimestampMs end = c.end();
        for (std::size_t k = 0; k < c.events.size(); ++k) {
            const Event& ev = c.events[k];
            Prefix p;
            p.case_id = c.case_id;
            p.length = static_cast<std::uint32_t>(k + 1);
            p.case_length = static_cast<std::uint32_t>(c.events.size());
            p.end_timestamp = ev.timestamp;
            p.activity = ev.activity;
            p.elapsed_days = to_days(ev.timestamp - start);
            p.target_days = to_days(end - ev.timestamp);
            out.push_back(std::move(p));
        }
    }
    return out;
}

void write_prefix_csv(const std::vector<Prefix>& prefixes, std::ostream& out) {
    out << kPrefixHeader << '\n';
    for (const auto& p : prefixes) {
        detail::write_csv_field(out, p.case_id, ',');
        out << ',' << p.length << ',' << p.length << ',';
        detail::write_csv_field(out, p.activity, ',');
        out << ',' << format_iso8601_ms(p.end_timestamp) << ',' << format_days(p.elapsed_days)
            << ',' << format_days(p.target_days) << '\n';
    }
}

void write_prefix_csv(const std::vector<Prefix>& prefixes, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    write_prefix_csv(prefixes, out);
}

std::string to_prefix_csv_string(const std::vector<Prefix>& prefixes) {
    std::ostringstream out;
    write_prefix_csv(prefixes, out);
    return out.str();
}

std::vector<PrefixRow> read_prefix_csv(std::istream& in, const std::string& source_name) {
    detail::CsvReader reader(in, ',');
    std::vector<std::string> fields;
    if (!reader.next_record(fields))
        throw std::runtime_error(source_name + ": empty prefix file");
    {
        std::ostringstream joined;
        for (std::size_t i = 0; i < fields.size(); ++i) joined << (i ? "," : "") << fields[i];
        if (joined.str() != kPrefixHeader)
            throw std::runtime_error(source_name + ": unexpected prefix header '" + joined.str() +
                                     "'");
    }

    std::vector<PrefixRow> rows;
    while (reader.next_record(fields)) {
        if (fields.size() == 1 && fields[0].empty()) continue;
        const std::string ctx = source_name + ": row " + std::to_string(reader.record_number());
        if (fields.size() != 7)
            throw std::runtime_error(ctx + ": expected 7 fields, got " +
                                     std::to_string(fields.size()));
        PrefixRow r;
        r.case_id = fields[0];
        r.prefix_length = parse_u32(fields[1], ctx);
        r.event_index = parse_u32(fields[2], ctx);
        r.activity = fields[3];
        r.timestamp = parse_timestamp(fields[4], "iso8601");
        r.elapsed_days = parse_double(fields[5], ctx);
        r.target_days = parse_double(fields[6], ctx);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<PrefixRow> read_prefix_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    return read_prefix_csv(in, path.filename().string());
}

}  // namespace logbench
