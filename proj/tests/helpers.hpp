#pragma once

// Small builders shared by the unit tests.

#include <string>
#include <vector>

#include "logbench/event_log.hpp"
#include "logbench/time_util.hpp"

namespace testutil {

using logbench::Case;
using logbench::Event;
using logbench::EventLog;
using logbench::TimestampMs;

inline constexpr TimestampMs kT0 = 1'704'067'200'000;  // 2024-01-01T00:00:00Z

struct CaseSpec {
    std::string id;
    std::vector<double> event_offsets_days;  // from t0, ascending
};

inline EventLog make_log(const std::vector<CaseSpec>& specs, TimestampMs t0 = kT0) {
    EventLog log;
    log.source_file = "inline";
    log.mapping.case_column = "case_id";
    log.mapping.activity_column = "activity";
    log.mapping.timestamp_column = "timestamp";
    std::uint64_t order = 0;
    for (const auto& spec : specs) {
        Case c;
        c.case_id = spec.id;
        for (std::size_t k = 0; k < spec.event_offsets_days.size(); ++k) {
            Event ev;
            ev.case_id = spec.id;
            ev.activity = "a" + std::to_string(k % 3);
            ev.timestamp = t0 + logbench::days_to_ms(spec.event_offsets_days[k]);
            ev.file_order = order++;
            c.events.push_back(std::move(ev));
        }
        log.cases.push_back(std::move(c));
    }
    return log;
}

inline TimestampMs day(double offset, TimestampMs t0 = kT0) {
    return t0 + logbench::days_to_ms(offset);
}

}  // namespace testutil
