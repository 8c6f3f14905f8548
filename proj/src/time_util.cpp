#include "logbench/time_util.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace logbench {

namespace {

std::int64_t floor_div(std::int64_t value, std::int64_t divisor) {
    std::int64_t q = value / divisor;
    std::int64_t r = value % divisor;
    if (r != 0 && ((r > 0) != (divisor > 0))) --q;
    return q;
}

bool read_digits(std::string_view s, std::size_t& pos, int count, int& out) {
    if (pos + static_cast<std::size_t>(count) > s.size()) return false;
    int v = 0;
    for (int i = 0; i < count; ++i) {
        char c = s[pos + static_cast<std::size_t>(i)];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    pos += static_cast<std::size_t>(count);
    out = v;
    return true;
}

// Fractional seconds: consumes '.' + digits, returns milliseconds (extra
// digits beyond three are truncated).
int read_fraction_ms(std::string_view s, std::size_t& pos) {
    if (pos >= s.size() || (s[pos] != '.' && s[pos] != ',')) return 0;
    std::size_t p = pos + 1;
    int ms = 0;
    int digits = 0;
    while (p < s.size() && s[p] >= '0' && s[p] <= '9') {
        if (digits < 3) ms = ms * 10 + (s[p] - '0');
        ++digits;
        ++p;
    }
    if (digits == 0) return 0;  // lone '.' is not a fraction
    while (digits < 3) {
        ms *= 10;
        ++digits;
    }
    pos = p;
    return ms;
}

// Offset suffix: Z, +HH:MM, -HH:MM, +HHMM, +HH. Returns offset in minutes.
bool read_offset(std::string_view s, std::size_t& pos, int& offset_min) {
    if (pos >= s.size()) {
        offset_min = 0;
        return true;  // absent -> UTC
    }
    char c = s[pos];
    if (c == 'Z' || c == 'z') {
        ++pos;
        offset_min = 0;
        return true;
    }
    if (c != '+' && c != '-') return false;
    int sign = (c == '-') ? -1 : 1;
    ++pos;
    int hh = 0;
    if (!read_digits(s, pos, 2, hh)) return false;
    int mm = 0;
    if (pos < s.size() && s[pos] == ':') {
        ++pos;
        if (!read_digits(s, pos, 2, mm)) return false;
    } else if (pos + 2 <= s.size() && s[pos] >= '0' && s[pos] <= '9') {
        if (!read_digits(s, pos, 2, mm)) return false;
    }
    offset_min = sign * (hh * 60 + mm);
    return true;
}

std::optional<TimestampMs> parse_iso8601(std::string_view s) {
    std::size_t pos = 0;
    int year = 0, mon = 0, day = 0;
    bool neg_year = false;
    if (pos < s.size() && s[pos] == '-') {
        neg_year = true;
        ++pos;
    }
    if (!read_digits(s, pos, 4, year)) return std::nullopt;
    if (neg_year) year = -year;
    if (pos >= s.size() || s[pos] != '-') return std::nullopt;
    ++pos;
    if (!read_digits(s, pos, 2, mon)) return std::nullopt;
    if (pos >= s.size() || s[pos] != '-') return std::nullopt;
    ++pos;
    if (!read_digits(s, pos, 2, day)) return std::nullopt;
    if (mon < 1 || mon > 12 || day < 1 || day > 31) return std::nullopt;

    if (pos == s.size())  // date only
        return ms_from_civil(year, static_cast<unsigned>(mon), static_cast<unsigned>(day));

    if (s[pos] != 'T' && s[pos] != ' ') return std::nullopt;
    ++pos;
    int hh = 0, mi = 0, ss = 0;
    if (!read_digits(s, pos, 2, hh)) return std::nullopt;
    if (pos >= s.size() || s[pos] != ':') return std::nullopt;
    ++pos;
    if (!read_digits(s, pos, 2, mi)) return std::nullopt;
    if (pos < s.size() && s[pos] == ':') {
        ++pos;
        if (!read_digits(s, pos, 2, ss)) return std::nullopt;
    }
    int frac = read_fraction_ms(s, pos);
    int offset_min = 0;
    if (!read_offset(s, pos, offset_min)) return std::nullopt;
    if (pos != s.size()) return std::nullopt;
    if (hh > 23 || mi > 59 || ss > 60) return std::nullopt;

    TimestampMs t = ms_from_civil(year, static_cast<unsigned>(mon), static_cast<unsigned>(day),
                                  hh, mi, ss, frac);
    return t - static_cast<TimestampMs>(offset_min) * 60'000;
}

std::optional<TimestampMs> parse_with_pattern(std::string_view s, std::string_view fmt) {
    std::size_t pos = 0;
    int year = 1970, mon = 1, day = 1, hh = 0, mi = 0, ss = 0, frac = 0, offset_min = 0;
    for (std::size_t f = 0; f < fmt.size(); ++f) {
        if (fmt[f] != '%') {
            if (pos >= s.size() || s[pos] != fmt[f]) return std::nullopt;
            ++pos;
            continue;
        }
        if (++f >= fmt.size()) return std::nullopt;
        switch (fmt[f]) {
            case 'Y':
                if (!read_digits(s, pos, 4, year)) return std::nullopt;
                break;
            case 'm':
                if (!read_digits(s, pos, 2, mon)) return std::nullopt;
                break;
            case 'd':
                if (!read_digits(s, pos, 2, day)) return std::nullopt;
                break;
            case 'H':
                if (!read_digits(s, pos, 2, hh)) return std::nullopt;
                break;
            case 'M':
                if (!read_digits(s, pos, 2, mi)) return std::nullopt;
                break;
            case 'S':
                if (!read_digits(s, pos, 2, ss)) return std::nullopt;
                frac = read_fraction_ms(s, pos);
                break;
            case 'z':
                if (!read_offset(s, pos, offset_min)) return std::nullopt;
                break;
            case '%':
                if (pos >= s.size() || s[pos] != '%') return std::nullopt;
                ++pos;
                break;
            default:
                return std::nullopt;  // unsupported directive
        }
    }
    if (pos != s.size()) return std::nullopt;
    if (mon < 1 || mon > 12 || day < 1 || day > 31 || hh > 23 || mi > 59 || ss > 60)
        return std::nullopt;
    TimestampMs t = ms_from_civil(year, static_cast<unsigned>(mon), static_cast<unsigned>(day),
                                  hh, mi, ss, frac);
    return t - static_cast<TimestampMs>(offset_min) * 60'000;
}

}  // namespace

DurationMs days_to_ms(double days) {
    return static_cast<DurationMs>(std::llround(days * kMsPerDay));
}

std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilDate civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int y = static_cast<int>(yoe) + static_cast<int>(era) * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    CivilDate out;
    out.day = doy - (153 * mp + 2) / 5 + 1;
    out.month = mp < 10 ? mp + 3 : mp - 9;
    out.year = y + (out.month <= 2);
    return out;
}

CivilDate civil_from_ms(TimestampMs ms) {
    return civil_from_days(floor_div(ms, kMsPerDayInt));
}

TimestampMs ms_from_civil(int year, unsigned month, unsigned day,
                          int hour, int minute, int second, int millisecond) {
    std::int64_t days = days_from_civil(year, month, day);
    return days * kMsPerDayInt +
           (static_cast<std::int64_t>(hour) * 3600 + minute * 60 + second) * 1000 + millisecond;
}

std::int64_t month_index(TimestampMs ms) {
    CivilDate c = civil_from_ms(ms);
    return static_cast<std::int64_t>(c.year) * 12 + (c.month - 1);
}

TimestampMs month_start_ms(std::int64_t month_idx) {
    std::int64_t y = floor_div(month_idx, 12);
    unsigned m = static_cast<unsigned>(month_idx - y * 12) + 1;
    return ms_from_civil(static_cast<int>(y), m, 1);
}

TimestampMs month_end_ms(std::int64_t month_idx) {
    return month_start_ms(month_idx + 1) - 1;
}

std::string month_label(std::int64_t month_idx) {
    std::int64_t y = floor_div(month_idx, 12);
    unsigned m = static_cast<unsigned>(month_idx - y * 12) + 1;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04lld-%02u", static_cast<long long>(y), m);
    return buf;
}

std::string format_iso8601_ms(TimestampMs ms) {
    std::int64_t days = floor_div(ms, kMsPerDayInt);
    std::int64_t rem = ms - days * kMsPerDayInt;
    CivilDate c = civil_from_days(days);
    int milli = static_cast<int>(rem % 1000);
    rem /= 1000;
    int ss = static_cast<int>(rem % 60);
    rem /= 60;
    int mi = static_cast<int>(rem % 60);
    int hh = static_cast<int>(rem / 60);
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02d.%03dZ", c.year, c.month, c.day,
                  hh, mi, ss, milli);
    return buf;
}

std::string format_iso8601_date(TimestampMs ms) {
    CivilDate c = civil_from_ms(ms);
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", c.year, c.month, c.day);
    return buf;
}

std::optional<TimestampMs> try_parse_timestamp(std::string_view text, std::string_view format) {
    if (format.empty() || format == "iso8601") return parse_iso8601(text);
    return parse_with_pattern(text, format);
}

TimestampMs parse_timestamp(std::string_view text, std::string_view format) {
    auto t = try_parse_timestamp(text, format);
    if (!t)
        throw std::runtime_error("unparseable timestamp '" + std::string(text) + "' (format '" +
                                 std::string(format) + "')");
    return *t;
}

namespace {

// Bound granularity: YYYY-MM (7 chars), YYYY-MM-DD (10 chars), else full timestamp.
enum class BoundKind { Month, Day, Instant };

BoundKind classify_bound(std::string_view text) {
    if (text.size() == 7 && text[4] == '-') return BoundKind::Month;
    if (text.size() == 10 && text[4] == '-' && text[7] == '-') return BoundKind::Day;
    return BoundKind::Instant;
}

}  // namespace

TimestampMs parse_bound_start(std::string_view text) {
    switch (classify_bound(text)) {
        case BoundKind::Month: {
            TimestampMs t = parse_timestamp(std::string(text) + "-01", "iso8601");
            return t;
        }
        case BoundKind::Day:
        case BoundKind::Instant:
            return parse_timestamp(text, "iso8601");
    }
    return 0;
}

TimestampMs parse_bound_end(std::string_view text) {
    switch (classify_bound(text)) {
        case BoundKind::Month: {
            TimestampMs first = parse_timestamp(std::string(text) + "-01", "iso8601");
            return month_end_ms(month_index(first));
        }
        case BoundKind::Day:
            return parse_timestamp(text, "iso8601") + kMsPerDayInt - 1;
        case BoundKind::Instant:
            return parse_timestamp(text, "iso8601");
    }
    return 0;
}

}  // namespace logbench
