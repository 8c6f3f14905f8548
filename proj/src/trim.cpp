#include "logbench/trim.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace logbench {

void TrimBounds::validate() const {
    if (start_on_or_after && end_on_or_before && !(*start_on_or_after < *end_on_or_before))
        throw std::invalid_argument("trim bounds: start must precede end");
}

TrimBounds TrimBounds::from_strings(const std::optional<std::string>& start,
                                    const std::optional<std::string>& end, EndField end_field) {
    TrimBounds b;
    if (start && !start->empty()) b.start_on_or_after = parse_bound_start(*start);
    if (end && !end->empty()) b.end_on_or_before = parse_bound_end(*end);
    b.end_field = end_field;
    b.validate();
    return b;
}

std::pair<EventLog, std::size_t> trim_chronological(const EventLog& log,
                                                    const TrimBounds& bounds) {
    bounds.validate();
    if (bounds.empty()) return {log, 0};

    EventLog out;
    out.attribute_columns = log.attribute_columns;
    out.source_file = log.source_file;
    out.mapping = log.mapping;
    out.history = log.history;
    std::size_t removed = 0;
    for (const auto& c : log.cases) {
        bool keep = true;
        if (bounds.start_on_or_after && c.start() < *bounds.start_on_or_after) keep = false;
        if (bounds.end_on_or_before) {
            TimestampMs field = bounds.end_field == TrimBounds::EndField::CaseEnd ? c.end() : c.start();
            if (field > *bounds.end_on_or_before) keep = false;
        }
        if (keep)
            out.cases.push_back(c);
        else
            ++removed;
    }
    if (out.cases.empty())
        throw std::runtime_error("trim bounds removed all " + std::to_string(log.n_cases()) +
                                 " cases");

    nlohmann::json params;
    params["removed_cases"] = removed;
    params["start_on_or_after"] = bounds.start_on_or_after
                                      ? nlohmann::json(format_iso8601_ms(*bounds.start_on_or_after))
                                      : nlohmann::json(nullptr);
    params["end_on_or_before"] = bounds.end_on_or_before
                                     ? nlohmann::json(format_iso8601_ms(*bounds.end_on_or_before))
                                     : nlohmann::json(nullptr);
    params["end_field"] =
        bounds.end_field == TrimBounds::EndField::CaseEnd ? "case_end" : "case_start";
    out.history.push_back({"trim_chronological", std::move(params)});
    return {std::move(out), removed};
}

TrimBounds suggest_trim(const MonthlyProfile& profile, double sparsity_ratio) {
    if (profile.months.empty()) throw std::invalid_argument("suggest_trim: empty profile");
    if (!(sparsity_ratio > 0.0 && sparsity_ratio < 1.0))
        throw std::invalid_argument("suggest_trim: sparsity_ratio must be in (0,1)");

    std::vector<double> counts;
    counts.reserve(profile.months.size());
    for (const auto& m : profile.months) counts.push_back(static_cast<double>(m.case_starts));
    std::vector<double> sorted = counts;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double median =
        n % 2 == 1 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
    const double threshold = sparsity_ratio * median;

    std::size_t lead = 0;
    while (lead < counts.size() && counts[lead] < threshold) ++lead;
    if (lead == counts.size()) return {};  // everything sparse; no sensible suggestion

    std::size_t trail = counts.size();
    while (trail > lead && counts[trail - 1] < threshold) --trail;

    TrimBounds out;
    if (lead > 0) out.start_on_or_after = month_start_ms(profile.months[lead].month_idx);
    if (trail < counts.size()) out.end_on_or_before = month_end_ms(profile.months[trail - 1].month_idx);
    return out;
}

}  // namespace logbench
