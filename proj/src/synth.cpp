#include "logbench/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace logbench {

namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double exponential(double mean) {
        double u = uniform01();
        if (u >= 1.0) u = std::nextafter(1.0, 0.0);
        return -mean * std::log1p(-u);
    }

    double normal() {
        // Box-Muller; one draw discarded for simplicity.
        double u1 = uniform01();
        double u2 = uniform01();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793 * u2);
    }

    std::size_t uniform_index(std::size_t lo, std::size_t hi) {  // inclusive bounds
        const double span = static_cast<double>(hi - lo) + 1.0;
        auto off = static_cast<std::size_t>(uniform01() * span);
        if (off >= static_cast<std::size_t>(span)) off = static_cast<std::size_t>(span) - 1;
        return lo + off;
    }

private:
    std::mt19937_64 eng_;
};

std::string pad_id(std::size_t i, std::size_t n_total) {
    std::size_t width = 1;
    for (std::size_t v = n_total; v >= 10; v /= 10) ++width;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "c%0*zu", static_cast<int>(width), i);
    return buf;
}

double draw_duration(Rng& rng, const SynthSpec& spec) {
    switch (spec.duration_model) {
        case DurationModel::Fixed:
            return spec.duration_mean_days;
        case DurationModel::Uniform:
            return rng.uniform(spec.duration_min_days, spec.duration_max_days);
        case DurationModel::Exponential:
            return rng.exponential(spec.duration_mean_days);
        case DurationModel::LogNormal:
            return spec.duration_mean_days * std::exp(spec.duration_sigma * rng.normal());
    }
    return spec.duration_mean_days;
}

}  // namespace

void SynthSpec::validate() const {
    if (n_cases < 1) throw std::invalid_argument("synth: n_cases must be >= 1");
    if (min_events < 1 || max_events < min_events)
        throw std::invalid_argument("synth: need 1 <= min_events <= max_events");
    if (n_activities < 1) throw std::invalid_argument("synth: need at least one activity");
    if (arrival_rate_per_day <= 0.0)
        throw std::invalid_argument("synth: arrival_rate_per_day must be positive");
    switch (duration_model) {
        case DurationModel::Fixed:
        case DurationModel::Exponential:
            if (duration_mean_days < 0.0)
                throw std::invalid_argument("synth: negative duration_mean_days");
            break;
        case DurationModel::Uniform:
            if (duration_min_days < 0.0 || duration_max_days < duration_min_days)
                throw std::invalid_argument("synth: bad uniform duration range");
            break;
        case DurationModel::LogNormal:
            if (duration_mean_days <= 0.0 || duration_sigma <= 0.0)
                throw std::invalid_argument("synth: bad lognormal parameters");
            break;
    }
    if (!scenario.empty()) {
        auto all = known_scenarios();
        if (std::find(all.begin(), all.end(), scenario) == all.end())
            throw std::invalid_argument("synth: unknown scenario '" + scenario + "'");
    }
}

std::vector<std::string> known_scenarios() {
    return {"heavy_straddling", "one_pathological_long_case", "leading_sparse_months"};
}

std::pair<EventLog, GroundTruth> generate(const SynthSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);

    // Arrival instants.
    std::vector<TimestampMs> starts;
    starts.reserve(spec.n_cases);
    if (spec.scenario == "leading_sparse_months") {
        // A thin trickle over the first ~2.5 months, then the full rate.
        const std::size_t sparse = std::min<std::size_t>(std::max<std::size_t>(spec.n_cases / 50, 2),
                                                         spec.n_cases - 1);
        for (std::size_t i = 0; i < sparse; ++i)
            starts.push_back(spec.first_arrival +
                             days_to_ms(rng.uniform(0.0, 75.0)));
        double t = 80.0;
        for (std::size_t i = sparse; i < spec.n_cases; ++i) {
            t += rng.exponential(1.0 / spec.arrival_rate_per_day);
            starts.push_back(spec.first_arrival + days_to_ms(t));
        }
        std::sort(starts.begin(), starts.end());
    } else {
        double t = 0.0;
        for (std::size_t i = 0; i < spec.n_cases; ++i) {
            starts.push_back(spec.first_arrival + days_to_ms(t));
            t += rng.exponential(1.0 / spec.arrival_rate_per_day);
        }
    }

    // Durations.
    const double arrival_span_days =
        to_days(starts.back() - starts.front());
    std::vector<double> durations(spec.n_cases, 0.0);
    for (std::size_t i = 0; i < spec.n_cases; ++i) {
        if (spec.scenario == "heavy_straddling") {
            durations[i] = rng.uniform(0.25, 0.5) * std::max(arrival_span_days, 1.0);
        } else {
            durations[i] = draw_duration(rng, spec);
        }
    }
    if (spec.scenario == "one_pathological_long_case" && spec.n_cases > 1) {
        TimestampMs others_max_end = starts[1];
        for (std::size_t i = 1; i < spec.n_cases; ++i)
            others_max_end = std::max(others_max_end, starts[i] + days_to_ms(durations[i]));
        durations[0] = 0.75 * to_days(others_max_end - starts[0]);
    }

    // Activities pool.
    std::vector<std::string> pool;
    pool.reserve(spec.n_activities);
    for (std::size_t i = 0; i < spec.n_activities; ++i) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "act_%02zu", i);
        pool.emplace_back(buf);
    }

    EventLog log;
    log.source_file = "synthetic(seed=" + std::to_string(spec.seed) + ")";
    log.mapping.case_column = "case_id";
    log.mapping.activity_column = "activity";
    log.mapping.timestamp_column = "timestamp";
    GroundTruth truth;

    std::uint64_t order = 0;
    for (std::size_t i = 0; i < spec.n_cases; ++i) {
        Case c;
        c.case_id = pad_id(i + 1, spec.n_cases);
        const TimestampMs start = starts[i];
        const DurationMs dur = days_to_ms(durations[i]);
        std::size_t n_events = rng.uniform_index(spec.min_events, spec.max_events);
        if (i == 0 && spec.scenario == "one_pathological_long_case")
            n_events = std::max<std::size_t>(n_events, 2);

        std::vector<TimestampMs> times;
        times.reserve(n_events);
        if (n_events == 1 || dur == 0) {
            for (std::size_t k = 0; k < n_events; ++k) times.push_back(start);
        } else {
            times.push_back(start);
            for (std::size_t k = 0; k + 2 < n_events; ++k)
                times.push_back(start + days_to_ms(rng.uniform(0.0, to_days(dur))));
            times.push_back(start + dur);
            std::sort(times.begin(), times.end());
        }
        for (std::size_t k = 0; k < times.size(); ++k) {
            Event ev;
            ev.case_id = c.case_id;
            ev.activity = pool[rng.uniform_index(0, pool.size() - 1)];
            ev.timestamp = times[k];
            ev.file_order = order++;
            c.events.push_back(std::move(ev));
        }
        truth.cases.push_back({c.case_id, c.start(), c.end(), c.duration_days(), c.events.size()});
        truth.monthly_case_starts[month_index(c.start())] += 1;
        log.cases.push_back(std::move(c));
    }

    log.history.push_back({"synthesize",
                           {{"seed", spec.seed},
                            {"n_cases", spec.n_cases},
                            {"scenario", spec.scenario.empty() ? "default" : spec.scenario}}});
    return {std::move(log), std::move(truth)};
}

nlohmann::json GroundTruth::to_json() const {
    nlohmann::json out;
    out["cases"] = nlohmann::json::array();
    for (const auto& c : cases) {
        out["cases"].push_back({{"case_id", c.case_id},
                                {"start", format_iso8601_ms(c.start)},
                                {"end", format_iso8601_ms(c.end)},
                                {"duration_days", c.duration_days},
                                {"n_events", c.n_events}});
    }
    nlohmann::json monthly = nlohmann::json::object();
    for (const auto& [idx, count] : monthly_case_starts) monthly[month_label(idx)] = count;
    out["monthly_case_starts"] = std::move(monthly);
    return out;
}

}  // namespace logbench
