#include "logbench/eval.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "logbench/split.hpp"

namespace logbench {

int BaselineModel::length_bucket(std::uint32_t k) {
    if (k <= 5) return static_cast<int>(k);
    if (k <= 10) return 6;
    if (k <= 20) return 7;
    return 8;
}

double BaselineModel::predict(const std::string& activity, std::uint32_t length) const {
    auto it = bucket_means_.find({activity, length_bucket(length)});
    return it != bucket_means_.end() ? it->second : global_mean_;
}

BaselineModel fit_baseline(const std::vector<Prefix>& train) {
    if (train.empty()) throw std::invalid_argument("fit_baseline: empty training set");
    BaselineModel model;
    std::map<std::pair<std::string, int>, std::pair<double, std::size_t>> acc;
    double total = 0.0;
    for (const auto& p : train) {
        auto& slot = acc[{p.activity, BaselineModel::length_bucket(p.length)}];
        slot.first += p.target_days;
        slot.second += 1;
        total += p.target_days;
    }
    for (const auto& [key, slot] : acc)
        model.bucket_means_[key] = slot.first / static_cast<double>(slot.second);
    model.global_mean_ = total / static_cast<double>(train.size());
    return model;
}

double evaluate_mae(const BaselineModel& model, const std::vector<Prefix>& test) {
    if (test.empty()) throw std::invalid_argument("evaluate_mae: empty test set");
    double sum = 0.0;
    for (const auto& p : test) sum += std::abs(model.predict(p) - p.target_days);
    return sum / static_cast<double>(test.size());
}

namespace {

struct VariantSets {
    std::vector<Prefix> train;
    std::vector<Prefix> test;
    std::size_t train_cases = 0;
    std::size_t test_cases = 0;
};

LadderRow make_row(int variant, std::string name, const EventLog& log) {
    LadderRow row;
    row.variant = variant;
    row.name = std::move(name);
    row.max_case_duration_days = log.empty() ? 0.0 : to_days(log.max_case_duration_ms());
    return row;
}

void score(LadderRow& row, const SplitResult& split) {
    row.train_cases = split.accounting.train_cases;
    row.train_events = split.train_prefixes.size();
    row.test_cases = split.accounting.test_cases_all;
    row.test_events = split.test_prefixes.size();
    BaselineModel model = fit_baseline(split.train_prefixes);
    row.mae_days = evaluate_mae(model, split.test_prefixes);
}

}  // namespace

std::vector<LadderRow> run_ladder(const EventLog& raw, const LadderConfig& config) {
    std::vector<LadderRow> rows;
    auto attempt = [&](LadderRow row, auto&& build) {
        try {
            SplitResult split = build();
            score(row, split);
        } catch (const std::exception& e) {
            row.mae_days.reset();
            row.note = e.what();
        }
        rows.push_back(std::move(row));
    };

    // 1: regular split on the raw log, 10% test share.
    attempt(make_row(1, "base_90_10", raw), [&] {
        auto prefixes = generate_prefixes(raw);
        return split_regular(raw, prefixes, separation_time(raw, config.base_test_fraction));
    });

    // 2: + chronological trimming and deduplication.
    EventLog trimmed;
    bool trimmed_ok = false;
    try {
        trimmed = trim_chronological(raw, config.trim).first;
        trimmed = deduplicate(trimmed).first;
        trimmed_ok = true;
    } catch (const std::exception& e) {
        LadderRow row = make_row(2, "outlier_trim", raw);
        row.note = e.what();
        rows.push_back(row);
    }
    if (!trimmed_ok) return rows;
    attempt(make_row(2, "outlier_trim", trimmed), [&] {
        auto prefixes = generate_prefixes(trimmed);
        return split_regular(trimmed, prefixes,
                             separation_time(trimmed, config.base_test_fraction));
    });

    // 3: + end-of-dataset debias.
    attempt(make_row(3, "end_debias", trimmed), [&] {
        auto [survivors, report] = debias_end(trimmed, generate_prefixes(trimmed));
        return split_regular(trimmed, survivors,
                             separation_time(trimmed, config.base_test_fraction));
    });

    // 4: + 20% test share.
    attempt(make_row(4, "test_20", trimmed), [&] {
        auto [survivors, report] = debias_end(trimmed, generate_prefixes(trimmed));
        return split_regular(trimmed, survivors,
                             separation_time(trimmed, config.benchmark_test_fraction));
    });

    // 5: + strict temporal split.
    attempt(make_row(5, "strict_split", trimmed), [&] {
        auto [survivors, report] = debias_end(trimmed, generate_prefixes(trimmed));
        return split_strict(trimmed, survivors,
                            separation_time(trimmed, config.benchmark_test_fraction), false);
    });

    // 6: + test-start debias.
    attempt(make_row(6, "test_start_debias", trimmed), [&] {
        auto [survivors, report] = debias_end(trimmed, generate_prefixes(trimmed));
        return split_strict(trimmed, survivors,
                            separation_time(trimmed, config.benchmark_test_fraction), true);
    });

    // 7: + long-case removal at the chosen duration cap.
    {
        LadderRow row = make_row(7, "long_case_removal", trimmed);
        try {
            DurationMs cap_ms;
            if (config.max_duration_override) {
                cap_ms = *config.max_duration_override;
            } else {
                auto scan = scan_durations(trimmed, config.benchmark_test_fraction,
                                           config.long_case_cap);
                cap_ms = choose_max_duration(scan);
            }
            EventLog capped = filter_long_cases(trimmed, cap_ms).first;
            row.max_case_duration_days = to_days(capped.max_case_duration_ms());
            auto [survivors, report] = debias_end(capped, generate_prefixes(capped));
            SplitResult split = split_strict(
                capped, survivors, separation_time(capped, config.benchmark_test_fraction), true);
            score(row, split);
        } catch (const std::exception& e) {
            row.mae_days.reset();
            row.note = e.what();
        }
        rows.push_back(std::move(row));
    }

    return rows;
}

std::string ladder_csv(const std::vector<LadderRow>& rows) {
    std::ostringstream out;
    out << "variant,name,train_cases,train_events,test_cases,test_events,"
           "max_case_duration_days,mae_days,note\n";
    for (const auto& r : rows) {
        out << r.variant << ',' << r.name << ',' << r.train_cases << ',' << r.train_events << ','
            << r.test_cases << ',' << r.test_events << ',';
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.6f", r.max_case_duration_days);
        out << buf << ',';
        if (r.mae_days) {
            std::snprintf(buf, sizeof(buf), "%.9f", *r.mae_days);
            out << buf;
        }
        out << ',';
        std::string note = r.note;
        for (auto& c : note)
            if (c == ',' || c == '\n') c = ';';
        out << note << '\n';
    }
    return out.str();
}

nlohmann::json ladder_json(const std::vector<LadderRow>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json j = {{"variant", r.variant},
                            {"name", r.name},
                            {"train_cases", r.train_cases},
                            {"train_events", r.train_events},
                            {"test_cases", r.test_cases},
                            {"test_events", r.test_events},
                            {"max_case_duration_days", r.max_case_duration_days}};
        j["mae_days"] = r.mae_days ? nlohmann::json(*r.mae_days) : nlohmann::json(nullptr);
        j["note"] = r.note;
        out.push_back(std::move(j));
    }
    return out;
}

}  // namespace logbench
