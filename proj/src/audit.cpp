#include "logbench/audit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

#include "logbench/time_util.hpp"

namespace logbench {

namespace {

struct CaseAgg {
    std::uint32_t min_k = 0;
    std::uint32_t max_k = 0;
    double target_at_max_k = 0.0;
    TimestampMs end = 0;          // timestamp + target, from any row
    DurationMs duration_ms = 0;   // elapsed + target, max over rows
};

std::map<std::string, CaseAgg> aggregate(const std::vector<PrefixRow>& rows) {
    std::map<std::string, CaseAgg> out;
    for (const auto& r : rows) {
        const TimestampMs end = r.timestamp + days_to_ms(r.target_days);
        const DurationMs duration = days_to_ms(r.elapsed_days + r.target_days);
        auto [it, inserted] = out.try_emplace(r.case_id);
        CaseAgg& agg = it->second;
        if (inserted) {
            agg.min_k = agg.max_k = r.prefix_length;
            agg.target_at_max_k = r.target_days;
            agg.end = end;
            agg.duration_ms = duration;
        } else {
            agg.min_k = std::min(agg.min_k, r.prefix_length);
            if (r.prefix_length > agg.max_k) {
                agg.max_k = r.prefix_length;
                agg.target_at_max_k = r.target_days;
            }
            agg.end = std::max(agg.end, end);
            agg.duration_ms = std::max(agg.duration_ms, duration);
        }
    }
    return out;
}

std::string fmt_days(double d) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6f", d);
    return buf;
}

}  // namespace

nlohmann::json AuditReport::to_json() const {
    nlohmann::json out;
    out["all_pass"] = all_pass;
    out["checks"] = nlohmann::json::array();
    for (const auto& c : checks)
        out["checks"].push_back(
            {{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return out;
}

const AuditCheck* AuditReport::find(const std::string& id) const {
    for (const auto& c : checks)
        if (c.id == id) return &c;
    return nullptr;
}

AuditReport audit_benchmark(const std::vector<PrefixRow>& train_rows,
                            const std::vector<PrefixRow>& test_rows,
                            const nlohmann::json& manifest) {
    const TimestampMs t_sep = parse_timestamp(manifest.at("t_sep").get<std::string>(), "iso8601");
    const TimestampMs dataset_end =
        parse_timestamp(manifest.at("dataset_end").get<std::string>(), "iso8601");
    const double d_days = manifest.at("max_duration_days").get<double>();
    const DurationMs d_ms = days_to_ms(d_days);
    const TimestampMs zone_start = dataset_end - d_ms;

    auto train = aggregate(train_rows);
    auto test = aggregate(test_rows);

    AuditReport report;
    auto add = [&](std::string id, std::string name, bool pass, std::string detail) {
        report.checks.push_back({std::move(id), std::move(name), pass, std::move(detail)});
    };

    {  // a: disjoint case ids
        std::vector<std::string> shared;
        for (const auto& [id, agg] : train)
            if (test.count(id)) shared.push_back(id);
        add("a", "train and test case ids disjoint", shared.empty(),
            shared.empty() ? std::to_string(train.size()) + " train / " +
                                 std::to_string(test.size()) + " test cases"
                           : std::to_string(shared.size()) + " shared case ids, e.g. '" +
                                 shared.front() + "'");
    }
    {  // b: training cases completed before t_sep
        std::size_t bad = 0;
        std::string example;
        for (const auto& [id, agg] : train) {
            if (agg.end >= t_sep) {
                if (bad == 0) example = id;
                ++bad;
            }
        }
        add("b", "every train case ends before t_sep", bad == 0,
            bad == 0 ? "all " + std::to_string(train.size()) + " train cases end before " +
                           format_iso8601_ms(t_sep)
                     : std::to_string(bad) + " train cases end at/after t_sep, e.g. '" + example +
                           "'");
    }
    {  // c: test prefixes end at/after t_sep
        std::size_t bad = 0;
        std::string example;
        for (const auto& r : test_rows) {
            if (r.timestamp < t_sep) {
                if (bad == 0) example = r.case_id + "#" + std::to_string(r.prefix_length);
                ++bad;
            }
        }
        add("c", "every test prefix ends at/after t_sep", bad == 0,
            bad == 0 ? "all " + std::to_string(test_rows.size()) + " test prefixes at/after t_sep"
                     : std::to_string(bad) + " test prefixes before t_sep, e.g. " + example);
    }
    {  // d: no prefix ends in the terminal zone
        std::size_t bad = 0;
        std::string example;
        auto scan = [&](const std::vector<PrefixRow>& rows) {
            for (const auto& r : rows) {
                if (r.timestamp >= zone_start) {
                    if (bad == 0) example = r.case_id + "#" + std::to_string(r.prefix_length);
                    ++bad;
                }
            }
        };
        scan(train_rows);
        scan(test_rows);
        add("d", "no prefix ends inside [dataset_end - d, dataset_end]", bad == 0,
            bad == 0 ? "zone [" + format_iso8601_ms(zone_start) + ", " +
                           format_iso8601_ms(dataset_end) + "] is clear"
                     : std::to_string(bad) + " prefixes inside the zone, e.g. " + example);
    }
    {  // e: case durations capped by d
        std::size_t bad = 0;
        std::string example;
        auto scan = [&](const std::map<std::string, CaseAgg>& aggs) {
            for (const auto& [id, agg] : aggs) {
                if (agg.duration_ms > d_ms) {
                    if (bad == 0) example = id;
                    ++bad;
                }
            }
        };
        scan(train);
        scan(test);
        add("e", "no case lasts longer than d", bad == 0,
            bad == 0 ? "max duration <= " + fmt_days(d_days) + " days"
                     : std::to_string(bad) + " cases exceed " + fmt_days(d_days) +
                           " days, e.g. '" + example + "'");
    }
    {  // f: manifest accounting equals recomputation from the files
        std::size_t missing_short = 0, missing_long = 0, complete = 0;
        for (const auto& [id, agg] : test) {
            const bool ms = agg.min_k > 1;
            const bool ml = agg.target_at_max_k > 0.0;
            if (ms) ++missing_short;
            if (ml) ++missing_long;
            if (!ms && !ml) ++complete;
        }
        const double fce = static_cast<double>(train.size()) + static_cast<double>(complete) +
                           (static_cast<double>(missing_short) + static_cast<double>(missing_long)) / 2.0;
        const nlohmann::json& acc = manifest.at("accounting");
        std::string mismatch;
        auto check_field = [&](const char* key, double got) {
            if (!mismatch.empty()) return;
            const double want = acc.at(key).get<double>();
            if (want != got)
                mismatch = std::string(key) + ": manifest " + fmt_days(want) + " vs recomputed " +
                           fmt_days(got);
        };
        check_field("train_cases", static_cast<double>(train.size()));
        check_field("test_cases_all", static_cast<double>(test.size()));
        check_field("test_missing_short_prefixes", static_cast<double>(missing_short));
        check_field("test_missing_long_prefixes", static_cast<double>(missing_long));
        check_field("test_complete", static_cast<double>(complete));
        check_field("total_cases", static_cast<double>(train.size() + test.size()));
        check_field("full_case_equivalent", fce);
        add("f", "manifest accounting matches the files", mismatch.empty(),
            mismatch.empty() ? "all seven accounting fields agree" : mismatch);
    }
    {  // g: full-case-equivalent identity inside the manifest
        const nlohmann::json& acc = manifest.at("accounting");
        const double expected = acc.at("train_cases").get<double>() +
                                acc.at("test_complete").get<double>() +
                                (acc.at("test_missing_short_prefixes").get<double>() +
                                 acc.at("test_missing_long_prefixes").get<double>()) /
                                    2.0;
        const double got = acc.at("full_case_equivalent").get<double>();
        add("g", "full_case_equivalent identity holds", got == expected,
            got == expected ? "full_case_equivalent = " + fmt_days(got)
                            : "manifest " + fmt_days(got) + " vs formula " + fmt_days(expected));
    }

    report.all_pass = std::all_of(report.checks.begin(), report.checks.end(),
                                  [](const AuditCheck& c) { return c.pass; });
    return report;
}

AuditReport audit_benchmark(const std::filesystem::path& train_csv,
                            const std::filesystem::path& test_csv,
                            const std::filesystem::path& manifest_json) {
    std::ifstream mf(manifest_json);
    if (!mf) throw std::runtime_error("cannot open '" + manifest_json.string() + "'");
    nlohmann::json manifest = nlohmann::json::parse(mf);
    return audit_benchmark(read_prefix_csv(train_csv), read_prefix_csv(test_csv), manifest);
}

}  // namespace logbench
