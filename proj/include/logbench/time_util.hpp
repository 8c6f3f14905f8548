#pragma once

// UTC time handling for event logs. All instants are epoch milliseconds
// (UTC); durations are millisecond counts and are only converted to
// fractional days at reporting boundaries.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace logbench {

using TimestampMs = std::int64_t;
using DurationMs = std::int64_t;

inline constexpr double kMsPerDay = 86'400'000.0;
inline constexpr std::int64_t kMsPerDayInt = 86'400'000;

inline double to_days(DurationMs ms) { return static_cast<double>(ms) / kMsPerDay; }
DurationMs days_to_ms(double days);

struct CivilDate {
    int year = 1970;
    unsigned month = 1;  // 1..12
    unsigned day = 1;    // 1..31
};

// Proleptic Gregorian calendar <-> days since 1970-01-01.
std::int64_t days_from_civil(int year, unsigned month, unsigned day);
CivilDate civil_from_days(std::int64_t days);

CivilDate civil_from_ms(TimestampMs ms);
TimestampMs ms_from_civil(int year, unsigned month, unsigned day,
                          int hour = 0, int minute = 0, int second = 0, int millisecond = 0);

// Calendar-month index: year * 12 + (month - 1). Valid for negative years too.
std::int64_t month_index(TimestampMs ms);
TimestampMs month_start_ms(std::int64_t month_idx);
// Last representable millisecond of the month.
TimestampMs month_end_ms(std::int64_t month_idx);
std::string month_label(std::int64_t month_idx);  // "2012-02"

// "2011-10-01T00:38:44.546Z"
std::string format_iso8601_ms(TimestampMs ms);
// "2011-10-01"
std::string format_iso8601_date(TimestampMs ms);

// Parses a timestamp according to `format`.
//
// format == "iso8601" (the default everywhere) accepts
//   YYYY-MM-DD[T| ]HH:MM:SS[.fff][Z|+HH:MM|-HH:MM|+HHMM] and bare YYYY-MM-DD;
// otherwise `format` is a strftime-like pattern supporting
//   %Y %m %d %H %M %S %z and literal characters. A fractional-second part
//   directly after %S is consumed when present. Offsets are folded into UTC.
std::optional<TimestampMs> try_parse_timestamp(std::string_view text, std::string_view format);
TimestampMs parse_timestamp(std::string_view text, std::string_view format);  // throws on failure

// Bound notation used by trim configs: "YYYY-MM", "YYYY-MM-DD" or a full
// timestamp. Start bounds resolve to the first instant of the period, end
// bounds to the last millisecond.
TimestampMs parse_bound_start(std::string_view text);
TimestampMs parse_bound_end(std::string_view text);

}  // namespace logbench
