#pragma once

#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fosched/bench.hpp"
#include "fosched/io.hpp"

namespace fosched::cli {

enum ExitCode : int {
    kSuccess = 0,
    kInputError = 1,
    kBoundViolation = 2,
    kBudgetExceeded = 3,
};

namespace detail {

inline RunOptions run_options() {
    RunOptions options;
    options.exact.size_cap = oracle_cap_from_env();
    return options;
}

inline ReportFormat format_for(const std::string& name, const std::string& path) {
    if (name == "csv") return ReportFormat::csv;
    if (name == "json") return ReportFormat::json;
    return path.ends_with(".json") ? ReportFormat::json : ReportFormat::csv;
}

inline nlohmann::ordered_json report_json(const SolveReport& r) {
    nlohmann::ordered_json j;
    j["algorithm"] = std::string(name_of(r.algorithm));
    if (r.status == SolveStatus::ok) {
        j["schedule"] = io::to_json(r.schedule);
    } else {
        j["error"] = r.error;
        if (r.status == SolveStatus::budget) j["upper_bound"] = r.upper_bound;
    }
    j["ms"] = r.ms;
    if (r.trace) {
        auto steps = nlohmann::ordered_json::array();
        for (const auto& s : *r.trace) {
            steps.push_back({{"tried", s.tried}, {"machine", s.machine + 1}, {"load", s.load_after}});
        }
        j["trace"] = std::move(steps);
    }
    return j;
}

inline std::string reports_csv(const std::vector<SolveReport>& reports) {
    std::string out = "algorithm,machines,assignment,ms,error\n";
    for (const auto& r : reports) {
        out += std::string(name_of(r.algorithm)) + ',';
        std::string assignment;
        if (r.status == SolveStatus::ok) {
            out += std::to_string(r.machines());
            for (auto m : r.schedule.assignment()) {
                if (!assignment.empty()) assignment += ' ';
                assignment += std::to_string(m + 1);
            }
        }
        out += ',' + assignment + ',' + fosched::detail::fixed(r.ms, 3) + ',' +
               fosched::detail::csv_field(r.error) + '\n';
    }
    return out;
}

}  // namespace detail

/// Entry point shared by the fosched binary and the tests.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout,
                std::ostream& err = std::cerr) {
    CLI::App app{"Fixed-order machine minimization: generators, solvers and experiment harness"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate an instance file");
    GenSpec gen_spec;
    std::optional<std::size_t> gen_n, gen_k;
    std::string gen_out;
    gen->add_option("--family", gen_spec.family, "Instance family")
        ->required()
        ->check(CLI::IsMember({"nf-hard", "tight-2", "unit", "slack-noninc", "slack-nondec",
                               "deadline-noninc", "arbitrary"}));
    auto* n_opt = gen->add_option("--n", gen_n, "Number of jobs");
    gen->add_option("--k", gen_k, "Parameter k of the tight-2 family")->excludes(n_opt);
    gen->add_option("--seed", gen_spec.seed, "PRNG seed (mt19937_64)");
    gen->add_option("--p-min", gen_spec.p_min);
    gen->add_option("--p-max", gen_spec.p_max);
    gen->add_option("--slack-min", gen_spec.slack_min);
    gen->add_option("--slack-max", gen_spec.slack_max);
    gen->add_option("--out", gen_out, "Output path")->required();

    // run
    auto* run_cmd = app.add_subcommand("run", "Solve one instance file");
    std::string algo = "all", input, run_format = "json";
    bool trace = false;
    run_cmd->add_option("--algo", algo)->check(CLI::IsMember({"ff", "nf", "cover", "opt", "all"}));
    run_cmd->add_option("--input", input)->required();
    run_cmd->add_flag("--trace", trace, "Include per-job greedy trace");
    run_cmd->add_option("--format", run_format)->check(CLI::IsMember({"json", "csv"}));

    // bench
    auto* bench = app.add_subcommand("bench", "Run a sweep and write a report");
    std::string sweep_path, bench_out, bench_format = "auto";
    bool check_bounds = false;
    std::size_t jobs = 1;
    bench->add_option("--sweep", sweep_path)->required();
    bench->add_option("--out", bench_out)->required();
    bench->add_flag("--assert-bounds", check_bounds);
    bench->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
    bench->add_option("--format", bench_format)->check(CLI::IsMember({"auto", "json", "csv"}));

    // hunt
    auto* hunt = app.add_subcommand("hunt", "Random search for large ff/opt ratios");
    std::size_t budget = 0;
    GenSpec hunt_spec;
    std::string threshold_text = "2";
    std::vector<std::size_t> plant_k;
    hunt->add_option("--budget", budget)->required();
    hunt->add_option("--n", hunt_spec.n)->required();
    hunt->add_option("--seed", hunt_spec.seed);
    hunt->add_option("--threshold", threshold_text, "Rational such as 2, 11/6 or 1.8");
    hunt->add_option("--p-max", hunt_spec.p_max);
    hunt->add_option("--slack-max", hunt_spec.slack_max);
    hunt->add_option("--plant-tight", plant_k, "Also evaluate the tight-2 instance for this k");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kInputError;
    }

    try {
        if (*gen) {
            if (gen_spec.family == "tight-2") {
                if (!gen_k && !gen_n) throw input_error("tight-2 needs --k");
                gen_spec.n = gen_k ? *gen_k : *gen_n;
            } else {
                if (!gen_n) throw input_error(gen_spec.family + " needs --n");
                gen_spec.n = *gen_n;
            }
            io::write_instance(gen_out, generate(gen_spec));
            return kSuccess;
        }

        if (*run_cmd) {
            const auto instance = io::read_instance(input);
            auto options = detail::run_options();
            options.trace = trace;
            const auto algorithms = parse_algorithms(algo);
            const auto reports = run(instance, algorithms, options);
            if (run_format == "csv") {
                out << detail::reports_csv(reports);
            } else {
                nlohmann::ordered_json doc;
                doc["instance"] = instance.name();
                doc["n"] = instance.size();
                auto list = nlohmann::ordered_json::array();
                for (const auto& r : reports) list.push_back(detail::report_json(r));
                doc["reports"] = std::move(list);
                out << doc.dump(2) << '\n';
            }
            for (const auto& r : reports) {
                if (r.status == SolveStatus::budget) {
                    err << "opt: " << r.error << '\n';
                    return kBudgetExceeded;
                }
                if (r.status == SolveStatus::capacity) {
                    err << "opt: " << r.error << '\n';
                    return kInputError;
                }
            }
            return kSuccess;
        }

        if (*bench) {
            nlohmann::json doc;
            try {
                doc = nlohmann::json::parse(io::read_file(sweep_path));
            } catch (const nlohmann::json::parse_error& e) {
                throw input_error(std::string("malformed sweep file: ") + e.what());
            }
            const auto cases = expand_sweep(doc);
            const auto result = run_sweep(cases, jobs, detail::run_options());
            io::write_file(bench_out,
                           emit_report(result.records, detail::format_for(bench_format, bench_out)));

            std::size_t violations = 0;
            if (check_bounds) {
                for (const auto& r : result.records) {
                    if (!r.opt) continue;
                    for (const auto& v : assert_bounds(r)) {
                        err << "violation: " << v.record_id << ": " << v.assertion << " ("
                            << v.statement << ")\n";
                        ++violations;
                    }
                }
            }
            out << result.records.size() << " records, " << violations << " violations, "
                << result.oracle_failures << " oracle failures\n";
            if (violations > 0) return kBoundViolation;
            if (result.oracle_failures > 0) return kBudgetExceeded;
            return kSuccess;
        }

        if (*hunt) {
            hunt_spec.family = "arbitrary";
            const auto threshold = Rational::parse(threshold_text);
            std::vector<Instance> plants;
            for (auto k : plant_k) plants.push_back(gen_tight2(k));
            auto options = detail::run_options();
            if (hunt_spec.n > options.exact.size_cap) {
                throw capacity_error("--n " + std::to_string(hunt_spec.n) +
                                     " exceeds the oracle cap of " +
                                     std::to_string(options.exact.size_cap));
            }
            const auto result = counterexample_search(budget, hunt_spec, threshold, plants, options);

            nlohmann::ordered_json doc;
            doc["evaluated"] = result.evaluated;
            doc["skipped"] = result.skipped;
            doc["threshold"] = threshold_text;
            doc["best"] = result.best ? to_json(*result.best) : nlohmann::ordered_json(nullptr);
            auto flagged = nlohmann::ordered_json::array();
            for (const auto& r : result.flagged) flagged.push_back(r.id);
            doc["flagged"] = std::move(flagged);
            out << doc.dump(2) << '\n';
            if (!result.flagged.empty()) {
                err << "!!! " << result.flagged.size() << " instance(s) reached ff/opt >= "
                    << threshold_text << '\n';
                return kBoundViolation;
            }
            return kSuccess;
        }
    } catch (const input_error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const capacity_error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const budget_error& e) {
        err << "error: " << e.what() << '\n';
        return kBudgetExceeded;
    }
    return kSuccess;
}

}  // namespace fosched::cli
