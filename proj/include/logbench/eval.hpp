#pragma once

// Deterministic baseline predictor and the seven-variant impact ladder.
//
// The ladder starts from a plain 90/10 start-ranked split and switches the
// preprocessing measures on one at a time, so the effect of each on set
// sizes and error is visible in isolation:
//   1 base_90_10           regular split, raw log
//   2 outlier_trim         + chronological trimming and deduplication
//   3 end_debias           + terminal-zone prefix rejection
//   4 test_20              + 20% test share
//   5 strict_split         + training restricted to completed cases
//   6 test_start_debias    + straddler prefixes added to the test set
//   7 long_case_removal    + duration cap from the scan

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "logbench/debias.hpp"
#include "logbench/event_log.hpp"
#include "logbench/prefix.hpp"
#include "logbench/trim.hpp"

namespace logbench {

// Mean target per (last activity, prefix-length bucket), with the global
// training mean as fallback for unseen keys.
class BaselineModel {
public:
    // Buckets: 1,2,3,4,5, 6-10, 11-20, 21+.
    static int length_bucket(std::uint32_t k);

    double predict(const std::string& activity, std::uint32_t length) const;
    double predict(const Prefix& p) const { return predict(p.activity, p.length); }

    double global_mean() const { return global_mean_; }
    const std::map<std::pair<std::string, int>, double>& bucket_means() const {
        return bucket_means_;
    }

    friend BaselineModel fit_baseline(const std::vector<Prefix>& train);

private:
    std::map<std::pair<std::string, int>, double> bucket_means_;
    double global_mean_ = 0.0;
};

BaselineModel fit_baseline(const std::vector<Prefix>& train);  // throws on empty input
double evaluate_mae(const BaselineModel& model, const std::vector<Prefix>& test);

struct LadderRow {
    int variant = 0;
    std::string name;
    std::size_t train_cases = 0;
    std::size_t train_events = 0;  // retained training prefixes
    std::size_t test_cases = 0;
    std::size_t test_events = 0;
    double max_case_duration_days = 0.0;  // over cases feeding this variant
    std::optional<double> mae_days;       // empty when the variant degenerates
    std::string note;                     // reason for a missing MAE
};

struct LadderConfig {
    TrimBounds trim;                      // applied from variant 2 on
    double base_test_fraction = 0.10;
    double benchmark_test_fraction = 0.20;
    double long_case_cap = 0.05;
    std::optional<DurationMs> max_duration_override;  // skips the scan when set
};

std::vector<LadderRow> run_ladder(const EventLog& raw, const LadderConfig& config);

std::string ladder_csv(const std::vector<LadderRow>& rows);
nlohmann::json ladder_json(const std::vector<LadderRow>& rows);

}  // namespace logbench
