#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "logbench/stats.hpp"
#include "logbench/synth.hpp"

using namespace logbench;

TEST_CASE("single case, single event") {
    EventLog log = testutil::make_log({{"A", {0.0}}});
    DatasetStats s = compute_stats(log);
    CHECK(s.n_cases == 1);
    CHECK(s.n_events == 1);
    CHECK(s.median_events_per_case == 1.0);
    CHECK(s.mean_events_per_case == 1.0);
    CHECK(s.median_duration_days == 0.0);
    CHECK(s.mean_duration_days == 0.0);
    CHECK(s.max_duration_days == 0.0);
    CHECK(s.span_days == 0.0);
}

TEST_CASE("empty log is an error") {
    EventLog empty;
    CHECK_THROWS_AS(compute_stats(empty), std::invalid_argument);
}

TEST_CASE("median uses the mean of the middle pair for even counts") {
    EventLog log = testutil::make_log({{"A", {0.0, 1.0}},          // duration 1
                                       {"B", {0.0, 2.0}},          // duration 2
                                       {"C", {0.0, 0.5, 1.0, 4.0}},  // duration 4
                                       {"D", {0.0, 8.0}}});        // duration 8
    DatasetStats s = compute_stats(log);
    CHECK(s.median_duration_days == doctest::Approx(3.0));  // (2+4)/2
    CHECK(s.median_events_per_case == doctest::Approx(2.0));
    CHECK(s.mean_events_per_case == doctest::Approx(10.0 / 4.0));
    CHECK(s.max_duration_days == doctest::Approx(8.0));
}

TEST_CASE("stats are invariant under case reordering") {
    EventLog log = testutil::make_log(
        {{"A", {0.0, 3.0}}, {"B", {1.0, 2.0}}, {"C", {2.0, 2.25}}, {"D", {0.5, 6.0}}});
    EventLog shuffled = log;
    std::reverse(shuffled.cases.begin(), shuffled.cases.end());
    DatasetStats a = compute_stats(log);
    DatasetStats b = compute_stats(shuffled);
    CHECK(a.median_duration_days == b.median_duration_days);
    CHECK(a.mean_duration_days == b.mean_duration_days);
    CHECK(a.span_days == b.span_days);
    CHECK(a.max_duration_days == b.max_duration_days);
}

TEST_CASE("mean duration against an independent recomputation") {
    auto [log, truth] = generate([] {
        SynthSpec s;
        s.seed = 21;
        s.n_cases = 200;
        return s;
    }());
    DatasetStats s = compute_stats(log);
    double sum = 0.0;
    for (const auto& c : log.cases)
        sum += to_days(c.events.back().timestamp - c.events.front().timestamp);
    CHECK(std::abs(s.mean_duration_days - sum / static_cast<double>(log.n_cases())) < 0.05);
    CHECK(s.max_duration_days <= s.span_days);
}

TEST_CASE("monthly profile: one-month log") {
    EventLog log = testutil::make_log({{"A", {0.0, 1.0}}, {"B", {5.0}}});
    MonthlyProfile p = monthly_profile(log);
    REQUIRE(p.months.size() == 1);
    CHECK(p.months[0].case_starts == 2);
    CHECK(p.months[0].events == 3);
}

TEST_CASE("monthly profile: 3/7 split over two months") {
    std::vector<testutil::CaseSpec> specs;
    for (int i = 0; i < 3; ++i) specs.push_back({"m1_" + std::to_string(i), {double(i)}});
    for (int i = 0; i < 7; ++i) specs.push_back({"m2_" + std::to_string(i), {32.0 + i}});
    EventLog log = testutil::make_log(specs);  // t0 = 2024-01-01; offsets 32+ land in February
    MonthlyProfile p = monthly_profile(log);
    REQUIRE(p.months.size() == 2);
    CHECK(p.months[0].case_starts == 3);
    CHECK(p.months[1].case_starts == 7);
    CHECK(p.total_case_starts() == 10);
}

TEST_CASE("monthly profile zero-fills empty months") {
    EventLog log = testutil::make_log({{"A", {0.0}}, {"B", {95.0}}});  // Jan .. Apr 2024
    MonthlyProfile p = monthly_profile(log);
    REQUIRE(p.months.size() == 4);
    CHECK(p.months[1].case_starts == 0);
    CHECK(p.months[1].events == 0);
    CHECK(p.months[2].case_starts == 0);
    for (std::size_t i = 1; i < p.months.size(); ++i)
        CHECK(p.months[i].month_idx == p.months[i - 1].month_idx + 1);
}

TEST_CASE("profile totals equal dataset totals; schedule matches the generator") {
    auto [log, truth] = generate([] {
        SynthSpec s;
        s.seed = 33;
        s.n_cases = 150;
        s.arrival_rate_per_day = 2.0;
        return s;
    }());
    DatasetStats stats = compute_stats(log);
    MonthlyProfile p = monthly_profile(log);
    CHECK(p.total_case_starts() == stats.n_cases);
    CHECK(p.total_events() == stats.n_events);
    for (const auto& m : p.months) {
        auto it = truth.monthly_case_starts.find(m.month_idx);
        std::size_t expected = it == truth.monthly_case_starts.end() ? 0 : it->second;
        CHECK(m.case_starts == expected);
    }
}
