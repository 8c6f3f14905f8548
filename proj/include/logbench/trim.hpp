#pragma once

// Removal of chronological outliers at the start/end of a dataset.
//
// Bounds always come from explicit config; suggest_trim only proposes
// bounds from a monthly profile and is never applied automatically.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>

#include "logbench/event_log.hpp"
#include "logbench/stats.hpp"
#include "logbench/time_util.hpp"

namespace logbench {

struct TrimBounds {
    // Which case instant the end bound constrains. Month-granular cutoffs
    // don't say; bounding the case end is the default reading.
    enum class EndField { CaseEnd, CaseStart };

    std::optional<TimestampMs> start_on_or_after;  // first instant of the period
    std::optional<TimestampMs> end_on_or_before;   // last millisecond of the period
    EndField end_field = EndField::CaseEnd;

    bool empty() const { return !start_on_or_after && !end_on_or_before; }
    void validate() const;  // start < end when both set

    // "2010-10", "2012-02-15" or a full timestamp.
    static TrimBounds from_strings(const std::optional<std::string>& start,
                                   const std::optional<std::string>& end,
                                   EndField end_field = EndField::CaseEnd);
};

// Keeps exactly the cases with start >= start_on_or_after (when set) and
// end-field <= end_on_or_before (when set). Whole cases only; throws when
// nothing is left.
std::pair<EventLog, std::size_t> trim_chronological(const EventLog& log, const TrimBounds& bounds);

// Advisory: proposes dropping leading/trailing runs of months whose
// case-start count is below sparsity_ratio * median monthly count.
TrimBounds suggest_trim(const MonthlyProfile& profile, double sparsity_ratio = 0.1);

}  // namespace logbench
