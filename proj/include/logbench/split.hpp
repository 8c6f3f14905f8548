#pragma once

// Temporal train/test splitting.
//
// Cases are ranked by start time; the separation time t_sep is the start of
// the earliest case in the last ceil(test_fraction * n) block. Regular mode
// reproduces the widespread leaky split (train = every case starting
// before t_sep, including ones still running at t_sep); strict mode keeps
// only cases completed strictly before t_sep in the training set, and can
// additionally fill the start of the test set with the post-separation
// prefixes of straddling cases.

#include <cstddef>
#include <string>
#include <vector>

#include "logbench/event_log.hpp"
#include "logbench/prefix.hpp"
#include "logbench/time_util.hpp"

namespace logbench {

enum class SplitMode { Regular, Strict };

struct SplitSpec {
    double test_fraction = 0.20;
    SplitMode mode = SplitMode::Strict;
    bool debias_test_start = true;
};

struct SplitAccounting {
    std::size_t train_cases = 0;
    std::size_t test_cases_all = 0;
    // Straddlers: in the test set but without their pre-separation prefixes.
    std::size_t test_missing_short_prefixes = 0;
    // Truncated by the end-of-dataset zone: longest prefixes absent.
    std::size_t test_missing_long_prefixes = 0;
    std::size_t test_complete = 0;
    std::size_t total_cases = 0;  // train + test
    // train + complete + (missing_short + missing_long) / 2; a case can be
    // in both missing categories, hence the average rather than the sum.
    double full_case_equivalent = 0.0;
};

struct SplitResult {
    TimestampMs separation_time = 0;
    std::vector<Prefix> train_prefixes;
    std::vector<Prefix> test_prefixes;
    SplitAccounting accounting;
    TimestampMs test_start_date = 0;   // == separation_time
    TimestampMs dataset_end_date = 0;  // latest retained prefix end
};

// Start timestamp of the earliest case in the test block. Ties on start
// time are broken by case id. Throws on fewer than two cases; warns on the
// degenerate all-cases-share-one-start log.
TimestampMs separation_time(const EventLog& log, double test_fraction);

// Comparison harness only: train takes every prefix of cases starting
// before t_sep, test every prefix of cases starting at or after it.
SplitResult split_regular(const EventLog& log, const std::vector<Prefix>& prefixes,
                          TimestampMs t_sep);

// train: all prefixes of cases completed strictly before t_sep.
// test:  all prefixes of cases starting at or after t_sep, plus (with
//        debias_test_start) straddler prefixes ending at or after t_sep.
// Straddler prefixes ending before t_sep are discarded entirely.
SplitResult split_strict(const EventLog& log, const std::vector<Prefix>& prefixes,
                         TimestampMs t_sep, bool debias_test_start);

struct TimingReport {
    double max_case_duration_days = 0.0;  // over cases present in the split
    double span_days = 0.0;               // dataset end - earliest case start
    TimestampMs test_start = 0;
    TimestampMs dataset_end = 0;
};

TimingReport report_timing(const SplitResult& result, const EventLog& log);

std::string serialize_split(const SplitResult& result);  // deterministic, for hashing/tests

}  // namespace logbench
