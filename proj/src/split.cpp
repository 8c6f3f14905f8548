#include "logbench/split.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "logbench/errors.hpp"

namespace logbench {

namespace {

struct CaseInfo {
    TimestampMs start = 0;
    TimestampMs end = 0;
    std::uint32_t length = 0;
};

std::unordered_map<std::string, CaseInfo> index_cases(const EventLog& log) {
    std::unordered_map<std::string, CaseInfo> out;
    out.reserve(log.n_cases());
    for (const auto& c : log.cases)
        out[c.case_id] = {c.start(), c.end(), static_cast<std::uint32_t>(c.events.size())};
    return out;
}

// Accounting over the retained test prefixes. Retained lengths per case form
// a contiguous range: the terminal-zone rejection cuts a suffix of ks, the
// test-start rule cuts a prefix of ks.
void fill_accounting(SplitResult& r, const std::unordered_map<std::string, CaseInfo>& info,
                     TimestampMs t_sep) {
    std::unordered_map<std::string, std::size_t> train_seen;
    for (const auto& p : r.train_prefixes) train_seen.try_emplace(p.case_id);

    struct TestAgg {
        std::uint32_t min_k = 0;
        std::uint32_t max_k = 0;
    };
    std::unordered_map<std::string, TestAgg> test_agg;
    for (const auto& p : r.test_prefixes) {
        auto [it, inserted] = test_agg.try_emplace(p.case_id, TestAgg{p.length, p.length});
        if (!inserted) {
            it->second.min_k = std::min(it->second.min_k, p.length);
            it->second.max_k = std::max(it->second.max_k, p.length);
        }
    }

    SplitAccounting& a = r.accounting;
    a.train_cases = train_seen.size();
    a.test_cases_all = test_agg.size();
    a.test_missing_short_prefixes = 0;
    a.test_missing_long_prefixes = 0;
    a.test_complete = 0;
    for (const auto& [id, agg] : test_agg) {
        const CaseInfo& ci = info.at(id);
        const bool missing_short = ci.start < t_sep;  // straddler: lost pre-separation prefixes
        const bool missing_long = agg.max_k < ci.length;
        if (missing_short) ++a.test_missing_short_prefixes;
        if (missing_long) ++a.test_missing_long_prefixes;
        if (!missing_short && !missing_long) ++a.test_complete;
    }
    a.total_cases = a.train_cases + a.test_cases_all;
    a.full_case_equivalent =
        static_cast<double>(a.train_cases) + static_cast<double>(a.test_complete) +
        (static_cast<double>(a.test_missing_short_prefixes) +
         static_cast<double>(a.test_missing_long_prefixes)) /
            2.0;
}

void finish(SplitResult& r, const std::unordered_map<std::string, CaseInfo>& info,
            TimestampMs t_sep, const char* stage) {
    if (r.train_prefixes.empty())
        throw StageError(stage, "empty training set: no case completes before the separation time " +
                                    format_iso8601_ms(t_sep));
    if (r.test_prefixes.empty())
        throw StageError(stage, "empty test set at separation time " + format_iso8601_ms(t_sep));
    fill_accounting(r, info, t_sep);
    TimestampMs end = r.train_prefixes.front().end_timestamp;
    for (const auto& p : r.train_prefixes) end = std::max(end, p.end_timestamp);
    for (const auto& p : r.test_prefixes) end = std::max(end, p.end_timestamp);
    r.test_start_date = t_sep;
    r.dataset_end_date = end;
}

}  // namespace

TimestampMs separation_time(const EventLog& log, double test_fraction) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw std::invalid_argument("test_fraction must be in (0,1)");
    const std::size_t n = log.n_cases();
    if (n < 2) throw std::invalid_argument("separation_time: need at least 2 cases");

    std::vector<std::pair<TimestampMs, const std::string*>> ranked;
    ranked.reserve(n);
    for (const auto& c : log.cases) ranked.emplace_back(c.start(), &c.case_id);
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return *a.second < *b.second;
    });

    // ceil(test_fraction * n); the epsilon absorbs binary-fraction noise
    // (0.2 * 10 must give 2, not 3).
    auto n_test = static_cast<std::size_t>(
        std::ceil(test_fraction * static_cast<double>(n) - 1e-9));
    n_test = std::max<std::size_t>(1, std::min(n_test, n));
    const TimestampMs t_sep = ranked[n - n_test].first;
    if (t_sep == ranked.front().first)
        std::cerr << "warning: separation time equals the earliest case start; "
                     "every case straddles the split\n";
    return t_sep;
}

SplitResult split_regular(const EventLog& log, const std::vector<Prefix>& prefixes,
                          TimestampMs t_sep) {
    auto info = index_cases(log);
    SplitResult r;
    r.separation_time = t_sep;
    for (const auto& p : prefixes) {
        const CaseInfo& ci = info.at(p.case_id);
        if (ci.start < t_sep)
            r.train_prefixes.push_back(p);
        else
            r.test_prefixes.push_back(p);
    }
    finish(r, info, t_sep, "split_regular");
    return r;
}

SplitResult split_strict(const EventLog& log, const std::vector<Prefix>& prefixes,
                         TimestampMs t_sep, bool debias_test_start) {
    auto info = index_cases(log);
    SplitResult r;
    r.separation_time = t_sep;
    for (const auto& p : prefixes) {
        const CaseInfo& ci = info.at(p.case_id);
        if (ci.end < t_sep) {
            r.train_prefixes.push_back(p);
        } else if (ci.start >= t_sep) {
            r.test_prefixes.push_back(p);
        } else if (debias_test_start && p.end_timestamp >= t_sep) {
            r.test_prefixes.push_back(p);  // straddler, post-separation prefix
        }
        // Straddler prefixes ending before t_sep belong to neither set.
    }
    finish(r, info, t_sep, "split_strict");
    return r;
}

TimingReport report_timing(const SplitResult& result, const EventLog& log) {
    std::unordered_map<std::string, bool> present;
    for (const auto& p : result.train_prefixes) present.try_emplace(p.case_id);
    for (const auto& p : result.test_prefixes) present.try_emplace(p.case_id);

    TimingReport t;
    t.test_start = result.test_start_date;
    t.dataset_end = result.dataset_end_date;
    DurationMs max_duration = 0;
    TimestampMs earliest_start = result.dataset_end_date;
    for (const auto& c : log.cases) {
        if (!present.count(c.case_id)) continue;
        max_duration = std::max(max_duration, c.duration_ms());
        earliest_start = std::min(earliest_start, c.start());
    }
    t.max_case_duration_days = to_days(max_duration);
    t.span_days = to_days(result.dataset_end_date - earliest_start);
    return t;
}

std::string serialize_split(const SplitResult& result) {
    std::ostringstream out;
    out << "t_sep=" << format_iso8601_ms(result.separation_time) << '\n';
    out << "end=" << format_iso8601_ms(result.dataset_end_date) << '\n';
    const SplitAccounting& a = result.accounting;
    out << "accounting=" << a.train_cases << ',' << a.test_cases_all << ','
        << a.test_missing_short_prefixes << ',' << a.test_missing_long_prefixes << ','
        << a.test_complete << ',' << a.total_cases << ',' << a.full_case_equivalent << '\n';
    out << "train\n";
    write_prefix_csv(result.train_prefixes, out);
    out << "test\n";
    write_prefix_csv(result.test_prefixes, out);
    return out.str();
}

}  // namespace logbench
