#include "logbench/debias.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "logbench/errors.hpp"
#include "logbench/split.hpp"

namespace logbench {

std::pair<std::vector<Prefix>, EndDebiasReport> debias_end(
    const EventLog& log, const std::vector<Prefix>& prefixes,
    std::optional<DurationMs> zone_width_override) {
    if (log.empty()) throw std::invalid_argument("debias_end: empty log");

    EndDebiasReport report;
    report.dataset_end = log.last_event_ts();
    report.zone_width_ms = zone_width_override.value_or(log.max_case_duration_ms());
    report.zone_width_days = to_days(report.zone_width_ms);
    report.zone_start = report.dataset_end - report.zone_width_ms;

    std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> per_case;  // kept, dropped
    std::vector<Prefix> kept;
    kept.reserve(prefixes.size());
    for (const auto& p : prefixes) {
        auto& counts = per_case[p.case_id];
        if (p.end_timestamp < report.zone_start) {
            kept.push_back(p);
            ++counts.first;
        } else {
            ++report.dropped_prefixes;
            ++counts.second;
        }
    }
    for (const auto& [id, counts] : per_case) {
        if (counts.first == 0)
            ++report.dropped_cases;
        else if (counts.second > 0)
            ++report.truncated_cases;
    }

    if (kept.empty() && !prefixes.empty()) {
        const Case* longest = &log.cases.front();
        for (const auto& c : log.cases)
            if (c.duration_ms() > longest->duration_ms()) longest = &c;
        throw StageError("debias_end",
                         "the terminal bias zone covers the entire dataset: longest case '" +
                             longest->case_id + "' lasts " +
                             std::to_string(longest->duration_days()) +
                             " days; consider removing long cases first");
    }
    return {std::move(kept), report};
}

std::pair<EventLog, std::size_t> filter_long_cases(const EventLog& log,
                                                   DurationMs max_duration) {
    if (max_duration < 0) throw std::invalid_argument("filter_long_cases: negative duration cap");
    EventLog out;
    out.attribute_columns = log.attribute_columns;
    out.source_file = log.source_file;
    out.mapping = log.mapping;
    out.history = log.history;
    std::size_t removed = 0;
    for (const auto& c : log.cases) {
        if (c.duration_ms() > max_duration)
            ++removed;
        else
            out.cases.push_back(c);
    }
    if (out.cases.empty())
        throw StageError("filter_long_cases", "duration cap " +
                                                  std::to_string(to_days(max_duration)) +
                                                  " days removes every case");
    out.history.push_back({"filter_long_cases",
                           {{"max_duration_days", to_days(max_duration)}, {"removed", removed}}});
    return {std::move(out), removed};
}

namespace {

// Flat per-case view for the scan. Candidates can number in the thousands
// on the public datasets, so each one is evaluated on precomputed arrays
// instead of rebuilding filtered EventLog copies. Semantics must stay
// identical to filter_long_cases -> generate_prefixes -> debias_end ->
// separation_time -> split_strict(test-start debias on); the unit and
// acceptance oracles compare the two paths.
struct ScanIndex {
    struct CaseView {
        TimestampMs start;
        TimestampMs end;
        DurationMs duration;
        const std::string* id;
        const Case* events;
    };
    std::vector<CaseView> cases;
    std::vector<std::size_t> by_duration;  // case indices, ascending duration
    std::vector<std::size_t> by_start;     // case indices, (start, case id) order
    std::vector<TimestampMs> end_running_max;  // over by_duration prefix
};

ScanIndex build_scan_index(const EventLog& log) {
    ScanIndex idx;
    idx.cases.reserve(log.n_cases());
    for (const auto& c : log.cases)
        idx.cases.push_back({c.start(), c.end(), c.duration_ms(), &c.case_id, &c});
    idx.by_duration.resize(idx.cases.size());
    idx.by_start.resize(idx.cases.size());
    for (std::size_t i = 0; i < idx.cases.size(); ++i) idx.by_duration[i] = idx.by_start[i] = i;
    std::sort(idx.by_duration.begin(), idx.by_duration.end(), [&](std::size_t a, std::size_t b) {
        return idx.cases[a].duration < idx.cases[b].duration;
    });
    std::sort(idx.by_start.begin(), idx.by_start.end(), [&](std::size_t a, std::size_t b) {
        if (idx.cases[a].start != idx.cases[b].start)
            return idx.cases[a].start < idx.cases[b].start;
        return *idx.cases[a].id < *idx.cases[b].id;
    });
    idx.end_running_max.resize(idx.cases.size());
    TimestampMs running = std::numeric_limits<TimestampMs>::min();
    for (std::size_t i = 0; i < idx.by_duration.size(); ++i) {
        running = std::max(running, idx.cases[idx.by_duration[i]].end);
        idx.end_running_max[i] = running;
    }
    return idx;
}

// Mirrors separation_time's ceil rule (including the binary-noise epsilon).
std::size_t test_block_size(std::size_t n, double fraction) {
    auto k = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
    return std::max<std::size_t>(1, std::min(k, n));
}

DurationScanPoint evaluate_candidate(const ScanIndex& idx, std::size_t last_retained_pos,
                                     double test_fraction) {
    DurationScanPoint point;
    const DurationMs d = idx.cases[idx.by_duration[last_retained_pos]].duration;
    point.max_duration_ms = d;
    point.max_duration_days = to_days(d);
    const std::size_t n_total = idx.cases.size();
    const std::size_t n_retained = last_retained_pos + 1;
    point.removed_case_fraction =
        static_cast<double>(n_total - n_retained) / static_cast<double>(n_total);

    if (n_retained < 2) {
        point.feasible = false;
        point.note = "fewer than 2 cases remain";
        return point;
    }
    // Retained maximum duration equals the candidate (its case survives), so
    // the zone width is d and the zone anchors at the retained dataset end.
    const TimestampMs dataset_end = idx.end_running_max[last_retained_pos];
    const TimestampMs zone_start = dataset_end - d;

    // Separation time over retained cases in (start, case id) order.
    const std::size_t n_test = test_block_size(n_retained, test_fraction);
    TimestampMs t_sep = 0;
    {
        std::size_t to_skip = n_retained - n_test;
        bool found = false;
        for (std::size_t i : idx.by_start) {
            if (idx.cases[i].duration > d) continue;
            if (to_skip == 0) {
                t_sep = idx.cases[i].start;
                found = true;
                break;
            }
            --to_skip;
        }
        if (!found) {
            point.feasible = false;
            point.note = "no separation candidate";
            return point;
        }
    }

    for (const auto& view : idx.cases) {
        if (view.duration > d) continue;
        std::size_t kept = 0;
        if (view.end < t_sep) {  // training case
            for (const auto& ev : view.events->events)
                if (ev.timestamp < zone_start) ++kept;
            if (kept > 0) {
                ++point.train_cases;
                point.train_events += kept;
            }
        } else if (view.start >= t_sep) {  // test case
            for (const auto& ev : view.events->events)
                if (ev.timestamp < zone_start) ++kept;
            if (kept > 0) {
                ++point.test_cases;
                point.test_events += kept;
            }
        } else {  // straddler: post-separation prefixes only
            for (const auto& ev : view.events->events)
                if (ev.timestamp >= t_sep && ev.timestamp < zone_start) ++kept;
            if (kept > 0) {
                ++point.test_cases;
                point.test_events += kept;
            }
        }
    }
    if (point.train_events == 0 || point.test_events == 0) {
        point.feasible = false;
        point.note = point.train_events == 0 ? "empty training set" : "empty test set";
        point.train_cases = point.test_cases = 0;
        point.train_events = point.test_events = 0;
    }
    return point;
}

}  // namespace

std::vector<DurationScanPoint> scan_durations(const EventLog& log, double test_fraction,
                                              double cap) {
    if (!(cap > 0.0 && cap < 1.0)) throw std::invalid_argument("scan cap must be in (0,1)");
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw std::invalid_argument("test_fraction must be in (0,1)");
    if (log.empty()) throw std::invalid_argument("scan_durations: empty log");

    const ScanIndex idx = build_scan_index(log);
    const std::size_t n = idx.cases.size();

    std::vector<DurationScanPoint> scan;
    for (std::size_t pos = 0; pos < n; ++pos) {
        // Last occurrence of each distinct duration.
        if (pos + 1 < n && idx.cases[idx.by_duration[pos + 1]].duration ==
                               idx.cases[idx.by_duration[pos]].duration)
            continue;
        const double removed_fraction = static_cast<double>(n - pos - 1) / static_cast<double>(n);
        if (removed_fraction > cap) continue;
        scan.push_back(evaluate_candidate(idx, pos, test_fraction));
    }
    return scan;
}

DurationMs choose_max_duration(const std::vector<DurationScanPoint>& scan) {
    if (scan.empty()) throw std::invalid_argument("choose_max_duration: empty scan");
    const DurationScanPoint* best = &scan.front();
    for (const auto& p : scan) {
        if (p.train_cases > best->train_cases ||
            (p.train_cases == best->train_cases && p.max_duration_ms > best->max_duration_ms))
            best = &p;
    }
    return best->max_duration_ms;
}

}  // namespace logbench
