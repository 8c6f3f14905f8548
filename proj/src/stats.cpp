#include "logbench/stats.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace logbench {

namespace {

double median_of_sorted(const std::vector<double>& v) {
    const std::size_t n = v.size();
    if (n == 0) return 0.0;
    if (n % 2 == 1) return v[n / 2];
    return (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

std::string fmt1(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return buf;
}

}  // namespace

std::size_t MonthlyProfile::total_case_starts() const {
    std::size_t n = 0;
    for (const auto& m : months) n += m.case_starts;
    return n;
}

std::size_t MonthlyProfile::total_events() const {
    std::size_t n = 0;
    for (const auto& m : months) n += m.events;
    return n;
}

DatasetStats compute_stats(const EventLog& log) {
    if (log.empty()) throw std::invalid_argument("compute_stats: empty log");

    DatasetStats s;
    s.n_cases = log.n_cases();
    s.n_events = log.n_events();

    std::vector<double> event_counts;
    std::vector<double> durations;
    event_counts.reserve(s.n_cases);
    durations.reserve(s.n_cases);
    for (const auto& c : log.cases) {
        event_counts.push_back(static_cast<double>(c.events.size()));
        durations.push_back(c.duration_days());
    }
    std::sort(event_counts.begin(), event_counts.end());
    std::sort(durations.begin(), durations.end());

    s.median_events_per_case = median_of_sorted(event_counts);
    s.mean_events_per_case = static_cast<double>(s.n_events) / static_cast<double>(s.n_cases);
    s.median_duration_days = median_of_sorted(durations);
    s.mean_duration_days =
        std::accumulate(durations.begin(), durations.end(), 0.0) / static_cast<double>(s.n_cases);
    s.max_duration_days = durations.back();
    s.span_days = to_days(log.last_event_ts() - log.first_event_ts());
    return s;
}

MonthlyProfile monthly_profile(const EventLog& log) {
    MonthlyProfile profile;
    if (log.empty()) return profile;

    const std::int64_t first = month_index(log.first_event_ts());
    const std::int64_t last = month_index(log.last_event_ts());
    profile.months.resize(static_cast<std::size_t>(last - first + 1));
    for (std::int64_t m = first; m <= last; ++m)
        profile.months[static_cast<std::size_t>(m - first)].month_idx = m;

    std::vector<double> duration_sums(profile.months.size(), 0.0);
    for (const auto& c : log.cases) {
        const std::size_t i = static_cast<std::size_t>(month_index(c.start()) - first);
        profile.months[i].case_starts += 1;
        duration_sums[i] += c.duration_days();
        for (const auto& ev : c.events)
            profile.months[static_cast<std::size_t>(month_index(ev.timestamp) - first)].events += 1;
    }
    for (std::size_t i = 0; i < profile.months.size(); ++i)
        if (profile.months[i].case_starts > 0)
            profile.months[i].mean_duration_days =
                duration_sums[i] / static_cast<double>(profile.months[i].case_starts);
    return profile;
}

nlohmann::json stats_to_json(const DatasetStats& stats, const MonthlyProfile& profile) {
    nlohmann::json months = nlohmann::json::array();
    for (const auto& m : profile.months) {
        months.push_back({{"month", month_label(m.month_idx)},
                          {"case_starts", m.case_starts},
                          {"mean_duration_days", m.mean_duration_days},
                          {"events", m.events}});
    }
    return {{"n_cases", stats.n_cases},
            {"n_events", stats.n_events},
            {"median_events_per_case", stats.median_events_per_case},
            {"mean_events_per_case", stats.mean_events_per_case},
            {"median_duration_days", stats.median_duration_days},
            {"mean_duration_days", stats.mean_duration_days},
            {"max_duration_days", stats.max_duration_days},
            {"span_days", stats.span_days},
            {"monthly_profile", std::move(months)}};
}

std::string stats_table(const std::string& name, const DatasetStats& stats) {
    std::ostringstream out;
    auto row = [&](const std::string& label, const std::string& value) {
        out << "  ";
        out << label;
        for (std::size_t i = label.size(); i < 24; ++i) out << ' ';
        out << value << '\n';
    };
    out << name << '\n';
    row("Nr. cases", std::to_string(stats.n_cases));
    row("Nr. events", std::to_string(stats.n_events));
    row("Median nr. events", fmt1(stats.median_events_per_case));
    row("Avg. nr. events", fmt1(stats.mean_events_per_case));
    row("Median nr. days", fmt1(stats.median_duration_days));
    row("Mean nr. days", fmt1(stats.mean_duration_days));
    row("Max nr. days", fmt1(stats.max_duration_days));
    row("Dataset nr. days", fmt1(stats.span_days));
    return out.str();
}

}  // namespace logbench
