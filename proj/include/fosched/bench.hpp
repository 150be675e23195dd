#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "fosched/core.hpp"
#include "fosched/cover.hpp"
#include "fosched/exact.hpp"
#include "fosched/greedy.hpp"
#include "fosched/instances.hpp"
#include "fosched/io.hpp"

namespace fosched {

enum class Algorithm { ff, nf, cover, opt };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::ff, Algorithm::nf, Algorithm::cover,
                                               Algorithm::opt};

inline std::string_view name_of(Algorithm a) {
    switch (a) {
        case Algorithm::ff: return "ff";
        case Algorithm::nf: return "nf";
        case Algorithm::cover: return "cover";
        case Algorithm::opt: return "opt";
    }
    return "?";
}

// "all" expands to every algorithm.
inline std::vector<Algorithm> parse_algorithms(std::string_view text) {
    if (text == "all") return {std::begin(kAllAlgorithms), std::end(kAllAlgorithms)};
    for (auto a : kAllAlgorithms) {
        if (name_of(a) == text) return {a};
    }
    throw input_error("unknown algorithm '" + std::string(text) + "'");
}

enum class SolveStatus { ok, capacity, budget };

struct SolveReport {
    Algorithm algorithm = Algorithm::ff;
    SolveStatus status = SolveStatus::ok;
    Schedule schedule;
    double ms = 0.0;
    std::optional<GreedyTrace> trace;  // ff/nf only, when requested
    std::string error;                 // set when status != ok
    std::size_t upper_bound = 0;       // best known count on budget failure

    std::size_t machines() const noexcept { return schedule.machine_count(); }
};

struct RunOptions {
    ExactOptions exact;
    bool trace = false;
};

namespace detail {

template <typename F>
double time_ms(F&& f) {
    const auto start = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

inline SolveReport solve_one(const Instance& instance, Algorithm algorithm, const RunOptions& options) {
    SolveReport report;
    report.algorithm = algorithm;
    try {
        report.ms = time_ms([&] {
            switch (algorithm) {
                case Algorithm::ff:
                case Algorithm::nf: {
                    if (options.trace) {
                        GreedyTrace trace;
                        report.schedule = algorithm == Algorithm::ff ? first_fit(instance, trace)
                                                                     : next_fit(instance, trace);
                        report.trace = std::move(trace);
                    } else {
                        report.schedule = algorithm == Algorithm::ff ? first_fit(instance)
                                                                     : next_fit(instance);
                    }
                    break;
                }
                case Algorithm::cover: report.schedule = setcover_greedy(instance); break;
                case Algorithm::opt: report.schedule = optimal(instance, options.exact); break;
            }
        });
    } catch (const capacity_error& e) {
        report.status = SolveStatus::capacity;
        report.error = e.what();
        return report;
    } catch (const budget_error& e) {
        report.status = SolveStatus::budget;
        report.error = e.what();
        report.upper_bound = e.upper_bound();
        return report;
    }
    if (!is_feasible(instance, report.schedule)) {
        throw std::logic_error(std::string(name_of(algorithm)) + " produced an infeasible schedule on " +
                               instance.name());
    }
    return report;
}

}  // namespace detail

/// Runs each requested solver. Oracle capacity and budget failures are
/// reported per algorithm; the others still run.
inline std::vector<SolveReport> run(const Instance& instance, std::span<const Algorithm> algorithms,
                                    const RunOptions& options = {}) {
    std::vector<SolveReport> out;
    out.reserve(algorithms.size());
    for (auto a : algorithms) out.push_back(detail::solve_one(instance, a, options));
    return out;
}

// Exact rational used for ratio thresholds ("2", "11/6", "1.5").
struct Rational {
    std::int64_t num = 2;
    std::int64_t den = 1;

    static Rational parse(std::string_view text) {
        auto to_int = [&](std::string_view s) -> std::int64_t {
            if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos) {
                throw input_error("invalid rational '" + std::string(text) + "'");
            }
            return std::stoll(std::string(s));
        };
        if (auto slash = text.find('/'); slash != std::string_view::npos) {
            const Rational r{to_int(text.substr(0, slash)), to_int(text.substr(slash + 1))};
            if (r.den == 0) throw input_error("zero denominator in '" + std::string(text) + "'");
            return r;
        }
        if (auto dot = text.find('.'); dot != std::string_view::npos) {
            const auto frac = text.substr(dot + 1);
            if (frac.size() > 9) throw input_error("too many decimals in '" + std::string(text) + "'");
            std::int64_t den = 1;
            for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
            return {to_int(text.substr(0, dot)) * den + (frac.empty() ? 0 : to_int(frac)), den};
        }
        return {to_int(text), 1};
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct BenchRecord {
    std::string id;
    std::size_t n = 0;
    OrderClass classes = OrderClass::none;
    std::size_t ff = 0;
    std::size_t nf = 0;
    std::size_t cover = 0;
    std::optional<std::size_t> opt;
    double ms_ff = 0.0;
    double ms_nf = 0.0;
    double ms_cover = 0.0;
    std::optional<double> ms_opt;

    std::optional<double> ratio(std::size_t count) const {
        if (!opt || *opt == 0) return std::nullopt;
        return static_cast<double>(count) / static_cast<double>(*opt);
    }
    std::optional<double> ratio_ff() const { return ratio(ff); }
    std::optional<double> ratio_nf() const { return ratio(nf); }
    std::optional<double> ratio_cover() const { return ratio(cover); }

    // ff/opt >= r, exactly.
    bool ff_ratio_at_least(const Rational& r) const {
        return opt && *opt > 0 &&
               static_cast<std::int64_t>(ff) * r.den >= r.num * static_cast<std::int64_t>(*opt);
    }

    friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

struct RecordOutcome {
    BenchRecord record;
    SolveStatus opt_status = SolveStatus::ok;
};

/// Runs all four solvers and folds the results into one record. The oracle
/// is skipped (opt left empty) when it reports a capacity or budget failure.
inline RecordOutcome evaluate(const Instance& instance, std::string id, const RunOptions& options = {}) {
    const auto reports = run(instance, kAllAlgorithms, options);
    RecordOutcome out;
    auto& r = out.record;
    r.id = std::move(id);
    r.n = instance.size();
    r.classes = classify(instance);
    r.ff = reports[0].machines();
    r.ms_ff = reports[0].ms;
    r.nf = reports[1].machines();
    r.ms_nf = reports[1].ms;
    r.cover = reports[2].machines();
    r.ms_cover = reports[2].ms;
    out.opt_status = reports[3].status;
    if (reports[3].status == SolveStatus::ok) {
        r.opt = reports[3].machines();
        r.ms_opt = reports[3].ms;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bound assertions

struct BoundAssertion {
    std::string name;
    std::string statement;
    std::function<bool(const BenchRecord&)> applies;
    std::function<bool(const BenchRecord&)> holds;
};

struct Violation {
    std::string record_id;
    std::string assertion;
    std::string statement;
};

// ceil((ln n + 1) * opt), the classical greedy set-cover guarantee.
inline std::size_t cover_bound(std::size_t n, std::size_t opt) {
    if (n == 0) return 0;
    return static_cast<std::size_t>(
        std::ceil((std::log(static_cast<double>(n)) + 1.0) * static_cast<double>(opt)));
}

inline const std::vector<BoundAssertion>& bound_assertions() {
    static const std::vector<BoundAssertion> all = [] {
        auto cls = [](OrderClass c) {
            return [c](const BenchRecord& r) { return has(r.classes, c) && r.n > 0; };
        };
        auto always = [](const BenchRecord& r) { return r.n > 0; };
        auto opt_is = [](std::size_t k) { return [k](const BenchRecord& r) { return *r.opt == k; }; };
        auto ff_2opt = [](const BenchRecord& r) { return r.ff + 1 <= 2 * *r.opt; };
        std::vector<BoundAssertion> v;
        v.push_back({"sandwich", "opt <= ff <= nf and opt <= cover", always, [](const BenchRecord& r) {
                         return *r.opt <= r.ff && r.ff <= r.nf && *r.opt <= r.cover;
                     }});
        v.push_back({"unit-optimal", "unit processing times: ff = opt",
                     cls(OrderClass::unit_processing),
                     [](const BenchRecord& r) { return r.ff == *r.opt; }});
        v.push_back({"slack-noninc-ff-eq-nf", "non-increasing slacks: ff = nf",
                     cls(OrderClass::nonincreasing_slack),
                     [](const BenchRecord& r) { return r.ff == r.nf; }});
        v.push_back({"slack-noninc-2approx", "non-increasing slacks: ff <= 2 opt - 1",
                     cls(OrderClass::nonincreasing_slack), ff_2opt});
        v.push_back({"slack-nondec-2approx", "non-decreasing slacks: ff <= 2 opt - 1",
                     cls(OrderClass::nondecreasing_slack), ff_2opt});
        v.push_back({"deadline-noninc-2approx", "non-increasing deadlines: ff <= 2 opt - 1",
                     cls(OrderClass::nonincreasing_deadline), ff_2opt});
        v.push_back({"opt1", "opt = 1: ff = 1", opt_is(1),
                     [](const BenchRecord& r) { return r.ff == 1; }});
        v.push_back({"opt2", "opt = 2: ff <= 3", opt_is(2),
                     [](const BenchRecord& r) { return r.ff <= 3; }});
        v.push_back({"opt3", "opt = 3: ff <= 6", opt_is(3),
                     [](const BenchRecord& r) { return r.ff <= 6; }});
        v.push_back({"cover-log", "cover <= ceil((ln n + 1) opt)", always,
                     [](const BenchRecord& r) { return r.cover <= cover_bound(r.n, *r.opt); }});
        return v;
    }();
    return all;
}

inline std::vector<Violation> assert_bounds(const BenchRecord& record) {
    if (!record.opt) throw input_error("record " + record.id + " has no optimum to check against");
    std::vector<Violation> out;
    for (const auto& a : bound_assertions()) {
        if (a.applies(record) && !a.holds(record)) out.push_back({record.id, a.name, a.statement});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Counterexample search

struct HuntResult {
    std::optional<BenchRecord> best;  // highest ff/opt, first one wins ties
    std::size_t evaluated = 0;
    std::size_t skipped = 0;           // oracle capacity/budget failures
    std::vector<BenchRecord> flagged;  // records with ff/opt >= threshold
};

/**
 * Evaluates `budget` random instances drawn from `templ` with seeds
 * templ.seed, templ.seed + 1, ..., plus any planted instances, and keeps the
 * record with the largest ff/opt.
 */
inline HuntResult counterexample_search(std::size_t budget, const GenSpec& templ,
                                        const Rational& threshold = {},
                                        std::span<const Instance> plants = {},
                                        const RunOptions& options = {}) {
    HuntResult result;
    auto consider = [&](const Instance& instance, std::string id) {
        const auto outcome = evaluate(instance, std::move(id), options);
        if (!outcome.record.opt) {
            ++result.skipped;
            return;
        }
        ++result.evaluated;
        const auto& r = outcome.record;
        if (*r.opt == 0) return;
        if (!result.best ||
            r.ff * *result.best->opt > result.best->ff * *r.opt) {
            result.best = r;
        }
        if (r.ff_ratio_at_least(threshold)) result.flagged.push_back(r);
    };

    for (const auto& plant : plants) consider(plant, "plant:" + plant.name());
    for (std::size_t i = 0; i < budget; ++i) {
        auto spec = templ;
        spec.seed = templ.seed + i;
        const auto instance = gen_random(spec);
        consider(instance, instance.name());
    }
    return result;
}

// ---------------------------------------------------------------------------
// Sweeps

struct SweepCase {
    std::string id;
    Instance instance;
};

/**
 * Expands a sweep document into concrete instances:
 *
 *   {"sweeps": [
 *      {"family": "nf-hard", "n_min": 3, "n_max": 20},
 *      {"family": "tight-2", "n_min": 1, "n_max": 5},
 *      {"family": "unit", "count": 500, "n_min": 1, "n_max": 12, "seed": 7,
 *       "p_min": 1, "p_max": 10, "slack_min": 0, "slack_max": 20}]}
 *
 * Parametric families iterate n_min..n_max. Random families produce `count`
 * instances; instance i uses seed + i and n = n_min + i mod (n_max - n_min + 1).
 */
inline std::vector<SweepCase> expand_sweep(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("sweeps") || !doc["sweeps"].is_array()) {
        throw input_error("sweep file needs a \"sweeps\" array");
    }
    auto get_int = [](const nlohmann::json& obj, const char* key, std::int64_t fallback) {
        if (!obj.contains(key)) return fallback;
        if (!obj[key].is_number_integer()) throw input_error(std::string("\"") + key + "\" must be an integer");
        return obj[key].get<std::int64_t>();
    };
    std::vector<SweepCase> cases;
    for (const auto& entry : doc["sweeps"]) {
        if (!entry.is_object() || !entry.contains("family") || !entry["family"].is_string()) {
            throw input_error("each sweep needs a \"family\" string");
        }
        GenSpec spec;
        spec.family = entry["family"].get<std::string>();
        const auto n_min = get_int(entry, "n_min", 1);
        const auto n_max = get_int(entry, "n_max", n_min);
        if (n_min < 0 || n_max < n_min) throw input_error("bad n range in sweep '" + spec.family + "'");

        if (spec.family == "nf-hard" || spec.family == "tight-2") {
            for (auto n = n_min; n <= n_max; ++n) {
                spec.n = static_cast<std::size_t>(n);
                auto instance = generate(spec);
                auto id = instance.name();
                cases.push_back({std::move(id), std::move(instance)});
            }
            continue;
        }
        if (!is_random_family(spec.family)) throw input_error("unknown family '" + spec.family + "'");
        const auto count = get_int(entry, "count", 1);
        if (count < 0) throw input_error("negative count in sweep '" + spec.family + "'");
        const auto seed = static_cast<std::uint64_t>(get_int(entry, "seed", 0));
        spec.p_min = get_int(entry, "p_min", spec.p_min);
        spec.p_max = get_int(entry, "p_max", spec.p_max);
        spec.slack_min = get_int(entry, "slack_min", spec.slack_min);
        spec.slack_max = get_int(entry, "slack_max", spec.slack_max);
        const auto width = static_cast<std::uint64_t>(n_max - n_min + 1);
        for (std::int64_t i = 0; i < count; ++i) {
            spec.seed = seed + static_cast<std::uint64_t>(i);
            spec.n = static_cast<std::size_t>(n_min) + static_cast<std::size_t>(static_cast<std::uint64_t>(i) % width);
            auto instance = gen_random(spec);
            auto id = instance.name();
            cases.push_back({std::move(id), std::move(instance)});
        }
    }
    return cases;
}

struct SweepResult {
    std::vector<BenchRecord> records;
    std::size_t oracle_failures = 0;
};

/// Evaluates every case, optionally on several threads; records come back
/// in case order regardless of scheduling.
inline SweepResult run_sweep(std::span<const SweepCase> cases, std::size_t threads = 1,
                             const RunOptions& options = {}) {
    std::vector<RecordOutcome> outcomes(cases.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cases.size(); i = next++) {
            outcomes[i] = evaluate(cases[i].instance, cases[i].id, options);
        }
    };
    threads = std::max<std::size_t>(1, std::min(threads, cases.size()));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    SweepResult result;
    result.records.reserve(outcomes.size());
    for (auto& o : outcomes) {
        if (o.opt_status != SolveStatus::ok) ++result.oracle_failures;
        result.records.push_back(std::move(o.record));
    }
    return result;
}

// ---------------------------------------------------------------------------
// Reports

enum class ReportFormat { csv, json };

inline constexpr std::string_view kReportColumns[] = {
    "id", "n", "classes", "ff", "nf", "cover", "opt", "ratio_ff", "ratio_nf",
    "ratio_cover", "ms_ff", "ms_nf", "ms_cover", "ms_opt"};

namespace detail {

inline std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

}  // namespace detail

inline std::string emit_csv(std::span<const BenchRecord> records) {
    std::ostringstream out;
    for (std::size_t i = 0; i < std::size(kReportColumns); ++i) {
        out << (i ? "," : "") << kReportColumns[i];
    }
    out << '\n';
    auto opt_ratio = [](std::optional<double> v) { return v ? detail::fixed(*v, 6) : std::string{}; };
    for (const auto& r : records) {
        out << detail::csv_field(r.id) << ',' << r.n << ',' << to_string(r.classes) << ',' << r.ff
            << ',' << r.nf << ',' << r.cover << ',' << (r.opt ? std::to_string(*r.opt) : "") << ','
            << opt_ratio(r.ratio_ff()) << ',' << opt_ratio(r.ratio_nf()) << ','
            << opt_ratio(r.ratio_cover()) << ',' << detail::fixed(r.ms_ff, 3) << ','
            << detail::fixed(r.ms_nf, 3) << ',' << detail::fixed(r.ms_cover, 3) << ','
            << (r.ms_opt ? detail::fixed(*r.ms_opt, 3) : "") << '\n';
    }
    return out.str();
}

inline nlohmann::ordered_json to_json(const BenchRecord& r) {
    nlohmann::ordered_json j;
    auto opt_or_null = [](const auto& v) -> nlohmann::ordered_json {
        if (v) return *v;
        return nullptr;
    };
    j["id"] = r.id;
    j["n"] = r.n;
    j["classes"] = to_string(r.classes);
    j["ff"] = r.ff;
    j["nf"] = r.nf;
    j["cover"] = r.cover;
    j["opt"] = opt_or_null(r.opt);
    j["ratio_ff"] = opt_or_null(r.ratio_ff());
    j["ratio_nf"] = opt_or_null(r.ratio_nf());
    j["ratio_cover"] = opt_or_null(r.ratio_cover());
    j["ms_ff"] = r.ms_ff;
    j["ms_nf"] = r.ms_nf;
    j["ms_cover"] = r.ms_cover;
    j["ms_opt"] = opt_or_null(r.ms_opt);
    return j;
}

inline std::string emit_json(std::span<const BenchRecord> records) {
    auto array = nlohmann::ordered_json::array();
    for (const auto& r : records) array.push_back(to_json(r));
    return array.dump(2) + "\n";
}

inline std::string emit_report(std::span<const BenchRecord> records, ReportFormat format) {
    return format == ReportFormat::csv ? emit_csv(records) : emit_json(records);
}

// Inverse of emit_json; ratio fields are derived and ignored on input.
inline std::vector<BenchRecord> records_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error(std::string("malformed report: ") + e.what());
    }
    if (!doc.is_array()) throw input_error("report must be a JSON array");
    std::vector<BenchRecord> out;
    for (const auto& j : doc) {
        try {
            BenchRecord r;
            r.id = j.at("id").get<std::string>();
            r.n = j.at("n").get<std::size_t>();
            r.classes = order_class_from_string(j.at("classes").get<std::string>());
            r.ff = j.at("ff").get<std::size_t>();
            r.nf = j.at("nf").get<std::size_t>();
            r.cover = j.at("cover").get<std::size_t>();
            if (!j.at("opt").is_null()) r.opt = j["opt"].get<std::size_t>();
            r.ms_ff = j.at("ms_ff").get<double>();
            r.ms_nf = j.at("ms_nf").get<double>();
            r.ms_cover = j.at("ms_cover").get<double>();
            if (!j.at("ms_opt").is_null()) r.ms_opt = j["ms_opt"].get<double>();
            out.push_back(std::move(r));
        } catch (const nlohmann::json::exception& e) {
            throw input_error(std::string("bad report record: ") + e.what());
        }
    }
    return out;
}

}  // namespace fosched
