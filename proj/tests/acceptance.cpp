// Acceptance suite: one pass/fail line per criterion, exit 0 iff nothing
// failed. Criteria on the public BPIC exports are optional and reported as
// SKIP when the CSVs are not present (see README: data/bpic/).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "logbench/audit.hpp"
#include "logbench/errors.hpp"
#include "logbench/eval.hpp"
#include "logbench/pipeline.hpp"
#include "logbench/presets.hpp"
#include "logbench/stats.hpp"
#include "logbench/synth.hpp"
#include "oracle.hpp"

namespace fs = std::filesystem;
using namespace logbench;

namespace {

enum class Status { Pass, Fail, Skip };

struct Outcome {
    Status status = Status::Fail;
    std::string detail;
};

Outcome pass(std::string detail) { return {Status::Pass, std::move(detail)}; }
Outcome fail(std::string detail) { return {Status::Fail, std::move(detail)}; }
Outcome skip(std::string detail) { return {Status::Skip, std::move(detail)}; }

fs::path g_workdir;

fs::path fresh_dir(const std::string& tag) {
    fs::path dir = g_workdir / tag;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::set<oracle::PrefixKey> keys(const std::vector<Prefix>& prefixes) {
    std::set<oracle::PrefixKey> out;
    for (const auto& p : prefixes) out.insert({p.case_id, p.length});
    return out;
}

SynthSpec random_spec(std::mt19937_64& rng) {
    SynthSpec spec;
    spec.seed = rng();
    spec.n_cases = 20 + rng() % 50;
    spec.arrival_rate_per_day = 4.0 + double(rng() % 100) / 10.0;
    spec.duration_mean_days = 0.3 + double(rng() % 12) / 10.0;
    spec.max_events = 4 + rng() % 8;
    spec.n_activities = 3 + rng() % 6;
    if (rng() % 10 == 0) spec.scenario = "leading_sparse_months";
    return spec;
}

// ---------------------------------------------------------------------------
// 1. Property suite: pipeline outputs pass every audit check; the regular
//    split is the negative control for check (b).
Outcome criterion1() {
    std::mt19937_64 rng(20240601);
    const std::size_t wanted = 200;
    std::size_t audited = 0;
    std::size_t degenerate = 0;
    std::size_t negative_controls = 0;
    std::size_t straddler_witnesses = 0;

    fs::path dir = fresh_dir("c1");
    for (std::size_t attempt = 0; audited < wanted && attempt < wanted * 3; ++attempt) {
        auto [log, truth] = generate(random_spec(rng));
        PipelineConfig config;
        config.out_dir = (dir / "run").string();
        PipelineOutcome out;
        try {
            out = run_pipeline_to_files(log, config);
        } catch (const StageError&) {
            ++degenerate;
            continue;
        }
        AuditReport report =
            audit_benchmark(out.train_csv, out.test_csv, out.manifest_json);
        if (!report.all_pass) {
            for (const auto& c : report.checks)
                if (!c.pass) return fail("audit check " + c.id + " failed: " + c.detail);
        }
        ++audited;

        // Negative control on a sample of the runs.
        if (audited % 4 == 0) {
            PipelineConfig regular = config;
            regular.mode = SplitMode::Regular;
            regular.out_dir = (dir / "regular").string();
            PipelineOutcome reg;
            try {
                reg = run_pipeline_to_files(log, regular);
            } catch (const StageError&) {
                continue;
            }
            ++negative_controls;
            const TimestampMs t_sep = reg.products.split.separation_time;
            bool straddlers = false;
            for (const auto& c : reg.products.log.cases)
                if (c.start() < t_sep && c.end() >= t_sep) straddlers = true;
            AuditReport reg_report =
                audit_benchmark(reg.train_csv, reg.test_csv, reg.manifest_json);
            const AuditCheck* b = reg_report.find("b");
            if (straddlers) {
                ++straddler_witnesses;
                if (b->pass)
                    return fail("regular split with straddlers passed check b: " + b->detail);
            }
        }
    }
    if (audited < wanted)
        return fail("only " + std::to_string(audited) + " feasible logs out of " +
                    std::to_string(wanted * 3) + " attempts");
    return pass(std::to_string(audited) + " randomized pipelines audited clean (" +
                std::to_string(degenerate) + " degenerate draws skipped); " +
                std::to_string(straddler_witnesses) + "/" + std::to_string(negative_controls) +
                " negative controls exposed leakage via check b");
}

// ---------------------------------------------------------------------------
// 2. Oracle equivalence on tiny logs: exact prefix-membership equality.
Outcome criterion2() {
    std::mt19937_64 rng(20240602);
    std::size_t compared = 0;
    std::size_t degenerate = 0;
    for (std::size_t attempt = 0; compared < 250 && attempt < 1200; ++attempt) {
        SynthSpec spec;
        spec.seed = rng();
        spec.n_cases = 2 + rng() % 9;  // <= 10 cases
        spec.min_events = 1;
        spec.max_events = 1 + rng() % 6;
        spec.arrival_rate_per_day = 1.0 + double(rng() % 40) / 10.0;
        spec.duration_mean_days = 0.2 + double(rng() % 30) / 10.0;
        auto [log, truth] = generate(spec);
        const double fraction = 0.15 + double(rng() % 30) / 100.0;

        std::vector<Prefix> survivors;
        EndDebiasReport report;
        TimestampMs t_sep = 0;
        SplitResult split;
        try {
            auto prefixes = generate_prefixes(log);
            std::tie(survivors, report) = debias_end(log, prefixes);
            t_sep = separation_time(log, fraction);
            split = split_strict(log, survivors, t_sep, true);
        } catch (const std::exception&) {
            ++degenerate;
            continue;
        }
        auto expected = oracle::classify(log, t_sep, true, report.zone_start);
        if (keys(split.train_prefixes) != expected.train)
            return fail("train membership diverged from the oracle at attempt " +
                        std::to_string(attempt));
        if (keys(split.test_prefixes) != expected.test)
            return fail("test membership diverged from the oracle at attempt " +
                        std::to_string(attempt));

        auto acc = oracle::account(log, expected, t_sep);
        const SplitAccounting& a = split.accounting;
        if (a.train_cases != acc.train_cases || a.test_cases_all != acc.test_cases ||
            a.test_missing_short_prefixes != acc.missing_short ||
            a.test_missing_long_prefixes != acc.missing_long || a.test_complete != acc.complete ||
            a.full_case_equivalent != acc.full_case_equivalent)
            return fail("accounting diverged from the oracle at attempt " +
                        std::to_string(attempt));
        ++compared;
    }
    if (compared < 250)
        return fail("only " + std::to_string(compared) + " comparable draws");
    return pass(std::to_string(compared) + " small logs matched the brute-force oracle exactly (" +
                std::to_string(degenerate) + " degenerate draws skipped)");
}

// ---------------------------------------------------------------------------
// 3. Accounting identity (synthetic part; the BPIC figure is checked in
//    criterion 5 when data is present).
bool g_criterion5_fce_checked = false;
std::string g_criterion5_fce_note;

Outcome criterion3() {
    std::mt19937_64 rng(20240603);
    std::size_t runs = 0;
    for (std::size_t attempt = 0; runs < 60 && attempt < 200; ++attempt) {
        auto [log, truth] = generate(random_spec(rng));
        PipelineProducts p;
        try {
            p = run_pipeline(log, PipelineConfig{});
        } catch (const StageError&) {
            continue;
        }
        const SplitAccounting& a = p.split.accounting;
        const double fce =
            double(a.train_cases) + double(a.test_complete) +
            (double(a.test_missing_short_prefixes) + double(a.test_missing_long_prefixes)) / 2.0;
        if (a.full_case_equivalent != fce)
            return fail("full_case_equivalent identity violated on a synthetic run");
        if (a.total_cases != a.train_cases + a.test_cases_all)
            return fail("total_cases identity violated on a synthetic run");
        ++runs;
    }
    if (runs < 60) return fail("too few feasible runs");
    std::string note = g_criterion5_fce_checked
                           ? ("; BPIC_2012 full case equivalent " + g_criterion5_fce_note)
                           : "; BPIC_2012 figure deferred to criterion 5 (data optional)";
    return pass("identity exact on " + std::to_string(runs) + " pipeline runs" + note);
}

// ---------------------------------------------------------------------------
// 4. Degenerate dataset: every case lasts about as long as the dataset span.
Outcome criterion4() {
    SynthSpec spec;
    spec.seed = 20240604;
    spec.n_cases = 40;
    spec.arrival_rate_per_day = 10.0;
    spec.duration_model = DurationModel::Uniform;
    spec.duration_min_days = 4.0;  // arrival window is ~4 days
    spec.duration_max_days = 5.0;
    auto [log, truth] = generate(spec);
    try {
        run_pipeline(log, PipelineConfig{});
        return fail("pipeline unexpectedly produced a benchmark");
    } catch (const StageError& e) {
        const std::string what = e.what();
        if (e.stage() == "split_strict" && what.find("empty training set") != std::string::npos)
            return pass("named error from stage split_strict: empty training set");
        if (e.stage() == "debias_end")
            return pass("named error from stage debias_end: " + what);
        return fail("unexpected stage error: " + what);
    }
}

// ---------------------------------------------------------------------------
// BPIC helpers (criteria 5 and 6; optional data).
fs::path bpic_dir() {
    if (const char* env = std::getenv("LOGBENCH_BPIC_DIR")) return fs::path(env);
    return fs::path("data") / "bpic";
}

std::optional<fs::path> find_bpic_csv(const std::string& stem) {
    const fs::path dir = bpic_dir();
    for (const auto& name :
         {stem + ".csv", stem + ".CSV"}) {
        fs::path p = dir / name;
        if (fs::exists(p)) return p;
    }
    return std::nullopt;
}

struct BpicExpectation {
    std::string preset;
    std::string file_stem;
    double d_days;
    std::size_t train_cases;
    // Zero means "not checked" (only BPIC_2012 has a full breakdown pinned).
    std::size_t test_all = 0, missing_short = 0, missing_long = 0, complete = 0;
    std::string t_sep_date;  // empty means not checked
    double fce = 0.0;
};

bool within_pct(double got, double want, double pct) {
    return std::abs(got - want) <= pct * want;
}

Outcome check_bpic_dataset(const BpicExpectation& e, std::string& fce_note) {
    auto csv = find_bpic_csv(e.file_stem);
    if (!csv) return skip("no " + e.file_stem + ".csv under " + bpic_dir().string());

    const Preset& preset = find_preset(builtin_presets(), e.preset);
    PipelineConfig config;
    config.input = csv->string();
    config.mapping = preset.mapping;
    config.trim_start = preset.trim_start;
    config.trim_end = preset.trim_end;
    config.preset = e.preset;
    config.out_dir = (fresh_dir("c5_" + e.preset)).string();

    PipelineOutcome out = run_pipeline_to_files(config);
    const nlohmann::json& m = out.products.manifest;
    const double d = m["max_duration_days"].get<double>();
    const SplitAccounting& a = out.products.split.accounting;

    std::ostringstream detail;
    detail << e.preset << ": d=" << d << " train=" << a.train_cases;
    if (std::abs(d - e.d_days) > 0.5)
        return fail(detail.str() + " (expected d " + std::to_string(e.d_days) + " +-0.5)");
    if (!within_pct(double(a.train_cases), double(e.train_cases), 0.01))
        return fail(detail.str() + " (expected train " + std::to_string(e.train_cases) + " +-1%)");
    if (e.test_all > 0) {
        if (!within_pct(double(a.test_cases_all), double(e.test_all), 0.01) ||
            !within_pct(double(a.test_missing_short_prefixes), double(e.missing_short), 0.01) ||
            !within_pct(double(a.test_missing_long_prefixes), double(e.missing_long), 0.01) ||
            !within_pct(double(a.test_complete), double(e.complete), 0.01))
            return fail(detail.str() + " test breakdown off: all=" +
                        std::to_string(a.test_cases_all) + " short=" +
                        std::to_string(a.test_missing_short_prefixes) + " long=" +
                        std::to_string(a.test_missing_long_prefixes) + " complete=" +
                        std::to_string(a.test_complete));
    }
    if (!e.t_sep_date.empty()) {
        TimestampMs expected = parse_bound_start(e.t_sep_date);
        TimestampMs got = out.products.split.separation_time;
        if (std::llabs(got - expected) > 2 * kMsPerDayInt)
            return fail(detail.str() + " t_sep " + format_iso8601_date(got) + " (expected " +
                        e.t_sep_date + " +-1 day)");
    }
    if (e.fce > 0.0) {
        if (!within_pct(a.full_case_equivalent, e.fce, 0.01))
            return fail(detail.str() + " full case equivalent " +
                        std::to_string(a.full_case_equivalent));
        g_criterion5_fce_checked = true;
        fce_note = std::to_string(a.full_case_equivalent) + " vs " + std::to_string(e.fce);
    }
    return pass(detail.str());
}

Outcome criterion5() {
    const std::vector<BpicExpectation> expectations = {
        {"bpic2012", "BPIC_2012", 32.3, 7019, 2468, 570, 621, 1340, "2012-01-05", 8955.0},
        {"bpic2017", "BPIC_2017", 47.8, 21404, 0, 0, 0, 0, "", 0.0},
        {"bpic2020_payments", "BPIC_2020_Payments", 28.9, 4494, 0, 0, 0, 0, "", 0.0},
    };
    std::vector<std::string> results;
    bool any_ran = false;
    for (const auto& e : expectations) {
        Outcome o = check_bpic_dataset(e, g_criterion5_fce_note);
        if (o.status == Status::Fail) return o;
        if (o.status == Status::Pass) {
            any_ran = true;
            results.push_back(o.detail);
        } else {
            results.push_back(o.detail);
        }
    }
    if (!any_ran)
        return skip("BPIC CSVs not found under " + bpic_dir().string() +
                    " (optional; see README)");
    std::string joined;
    for (const auto& r : results) joined += (joined.empty() ? "" : "; ") + r;
    return pass(joined);
}

// ---------------------------------------------------------------------------
// 6. Statistics reproduction for trimmed BPIC_2012.
Outcome criterion6() {
    auto csv = find_bpic_csv("BPIC_2012");
    if (!csv)
        return skip("BPIC_2012.csv not found under " + bpic_dir().string() +
                    " (optional; see README)");
    const Preset& preset = find_preset(builtin_presets(), "bpic2012");
    EventLog log = parse_csv(*csv, preset.mapping);
    TrimBounds bounds = TrimBounds::from_strings(preset.trim_start, preset.trim_end);
    log = trim_chronological(log, bounds).first;
    log = deduplicate(log).first;
    DatasetStats s = compute_stats(log);

    auto r1 = [](double v) { return std::round(v * 10.0) / 10.0; };
    std::ostringstream got;
    got << s.n_cases << "/" << s.n_events << "/" << r1(s.median_events_per_case) << "/"
        << r1(s.mean_events_per_case) << "/" << r1(s.median_duration_days) << "/"
        << r1(s.mean_duration_days) << "/" << r1(s.max_duration_days) << "/"
        << std::round(s.span_days);
    const std::string expected = "12183/228873/9/18.8/0.5/7.8/137.2/152";
    if (s.n_cases != 12183 || s.n_events != 228873 || r1(s.median_events_per_case) != 9.0 ||
        r1(s.mean_events_per_case) != 18.8 || r1(s.median_duration_days) != 0.5 ||
        r1(s.mean_duration_days) != 7.8 || r1(s.max_duration_days) != 137.2 ||
        std::round(s.span_days) != 152.0)
        return fail("stats " + got.str() + " != " + expected);
    return pass("trimmed BPIC_2012 stats match: " + got.str());
}

// ---------------------------------------------------------------------------
// 7. Seven-variant ladder: deterministic values and structural invariants.
Outcome criterion7() {
    SynthSpec spec;
    spec.seed = 20240607;
    spec.n_cases = 400;
    spec.arrival_rate_per_day = 4.0;
    spec.duration_mean_days = 1.2;
    spec.max_events = 12;
    auto [log, truth] = generate(spec);

    LadderConfig config;
    auto rows = run_ladder(log, config);
    if (rows.size() != 7) return fail("expected 7 variants, got " + std::to_string(rows.size()));
    for (const auto& r : rows)
        if (!r.mae_days)
            return fail("variant " + std::to_string(r.variant) + " degenerated: " + r.note);
    auto rows2 = run_ladder(log, config);
    if (ladder_csv(rows) != ladder_csv(rows2)) return fail("ladder is not deterministic");
    if (rows[4].train_cases > rows[3].train_cases)
        return fail("strict split enlarged the training set");
    if (rows[6].max_case_duration_days > rows[5].max_case_duration_days + 1e-12)
        return fail("long-case removal increased the maximum duration");

    std::ostringstream maes;
    for (const auto& r : rows) maes << (maes.tellp() > 0 ? "," : "") << *r.mae_days;

    std::string bpic_note = "; BPIC ladder skipped (no data)";
    if (auto csv = find_bpic_csv("BPIC_2012")) {
        const Preset& preset = find_preset(builtin_presets(), "bpic2012");
        EventLog raw = parse_csv(*csv, preset.mapping);
        LadderConfig bconfig;
        bconfig.trim = TrimBounds::from_strings(preset.trim_start, preset.trim_end);
        auto brows = run_ladder(raw, bconfig);
        if (brows.size() != 7) return fail("BPIC ladder did not produce 7 variants");
        if (brows[4].train_cases > brows[3].train_cases)
            return fail("BPIC ladder: strict split enlarged the training set");
        std::size_t scored = 0;
        for (const auto& r : brows)
            if (r.mae_days) ++scored;
        bpic_note = "; BPIC_2012 ladder ran (" + std::to_string(scored) + "/7 variants scored)";
    }
    return pass("7 deterministic MAE values [" + maes.str() + "]; invariants hold" + bpic_note);
}

// ---------------------------------------------------------------------------
// 8. Byte-identical reruns through the real CLI binary.
Outcome criterion8() {
#ifndef LOGBENCH_CLI_PATH
    return fail("CLI path not wired into the build");
#else
    const std::string cli = LOGBENCH_CLI_PATH;
    fs::path dir = fresh_dir("c8");
    auto run = [&](const std::string& args) {
        std::string cmd = "'" + cli + "' " + args + " > /dev/null 2>&1";
        return std::system(cmd.c_str());
    };
    if (run("--seed 9 synth --cases 150 --csv " + (dir / "log.csv").string() + " --truth " +
            (dir / "truth.json").string()) != 0)
        return fail("synth invocation failed");

    const std::string common = (dir / "log.csv").string() +
                               " --case-col case_id --activity-col activity --time-col timestamp";
    if (run("--out " + (dir / "run1").string() + " preprocess " + common) != 0)
        return fail("first preprocess failed");
    if (run("--out " + (dir / "run2").string() + " preprocess " + common) != 0)
        return fail("second preprocess failed");

    for (const char* name : {"train.csv", "test.csv", "manifest.json"}) {
        std::string a = slurp(dir / "run1" / name);
        std::string b = slurp(dir / "run2" / name);
        if (a.empty()) return fail(std::string(name) + " is empty");
        if (a != b) return fail(std::string(name) + " differs between identical runs");
    }

    int audit_rc = run("audit " + (dir / "run1" / "train.csv").string() + " " +
                       (dir / "run1" / "test.csv").string() + " " +
                       (dir / "run1" / "manifest.json").string());
    if (audit_rc != 0) return fail("CLI audit of a clean benchmark returned nonzero");
    return pass("synth + two preprocess runs byte-identical; CLI audit exit 0");
#endif
}

}  // namespace

int main() {
    g_workdir = fs::temp_directory_path() / "logbench_acceptance";
    fs::remove_all(g_workdir);
    fs::create_directories(g_workdir);

    struct Criterion {
        int number;
        std::string name;
        Outcome (*run)();
    };
    // Criterion 5 runs before 3 so the BPIC full-case-equivalent figure (when
    // data is present) can be folded into the criterion 3 report.
    std::vector<Criterion> criteria = {
        {1, "property suite: audited pipelines + leakage negative control", criterion1},
        {2, "oracle equivalence on small logs", criterion2},
        {5, "full-dataset reproduction (optional BPIC data)", criterion5},
        {3, "accounting identity", criterion3},
        {4, "degenerate dataset yields a named empty-training-set error", criterion4},
        {6, "statistics reproduction (optional BPIC data)", criterion6},
        {7, "seven-variant ladder determinism and invariants", criterion7},
        {8, "byte-identical preprocess reruns via the CLI", criterion8},
    };

    bool any_fail = false;
    std::vector<std::pair<int, std::string>> lines;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = fail(std::string("unhandled exception: ") + e.what());
        }
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
        const char* tag = o.status == Status::Pass ? "PASS"
                          : o.status == Status::Skip ? "SKIP"
                                                     : "FAIL";
        if (o.status == Status::Fail) any_fail = true;
        char buf[32];
        std::snprintf(buf, sizeof(buf), " (%lldms)", static_cast<long long>(ms));
        lines.emplace_back(c.number, "[" + std::string(tag) + "] criterion " +
                                          std::to_string(c.number) + ": " + c.name + " -- " +
                                          o.detail + buf);
    }
    std::sort(lines.begin(), lines.end());
    for (const auto& [n, line] : lines) std::cout << line << '\n';

    fs::remove_all(g_workdir);
    return any_fail ? 1 : 0;
}
