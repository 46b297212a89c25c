#include "batopt/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace batopt {

namespace io {

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

namespace {

// JSON has no inf/nan; those become null.
std::string json_real(double v) { return std::isfinite(v) ? format_real(v) : "null"; }

void append_point(std::string& out, const Point& p) {
    out += '[';
    for (std::size_t k = 0; k < p.dim(); ++k) {
        if (k) out += ',';
        out += json_real(p[k]);
    }
    out += ']';
}

Point json_point(const nlohmann::json& j) {
    std::vector<double> coords;
    coords.reserve(j.size());
    for (const auto& v : j) coords.push_back(v.is_null() ? std::nan("") : v.get<double>());
    return Point(std::move(coords));
}

}  // namespace

std::string trace_jsonl_line(const TrajectoryRecord& record) {
    std::string out = "{\"iter\":" + std::to_string(record.iteration) + ",\"positions\":[";
    for (std::size_t i = 0; i < record.positions.size(); ++i) {
        if (i) out += ',';
        append_point(out, record.positions[i]);
    }
    out += "],\"best\":" + json_real(record.best_value) + ",\"best_x\":";
    append_point(out, record.best_position);
    out += '}';
    return out;
}

TrajectoryRecord parse_trace_jsonl_line(std::string_view line) {
    const auto j = nlohmann::json::parse(line);
    TrajectoryRecord r;
    r.iteration = j.at("iter").get<std::uint64_t>();
    for (const auto& p : j.at("positions")) r.positions.push_back(json_point(p));
    r.best_value = j.at("best").is_null() ? std::nan("") : j.at("best").get<double>();
    if (j.contains("best_x")) r.best_position = json_point(j.at("best_x"));
    return r;
}

}  // namespace io

namespace {

/// A failure that maps onto a specific exit code.
struct CliError {
    int code;
    std::string message;
};

struct Options {
    std::string algorithm = "bat";
    std::vector<std::string> algorithms{"bat", "pso", "ga"};
    std::string function;
    std::vector<std::string> functions;
    std::size_t dim = 0;
    std::size_t trials = kDefaultTrials;
    double tolerance = kDefaultTolerance;
    std::uint64_t max_evals = kDefaultMaxEvaluations;
    std::size_t population = 40;
    std::uint64_t iterations = 20;
    std::uint64_t seed = 0;
    std::size_t threads = 0;
    std::string out;
    std::string format = "csv";

    double alpha = 0.9;
    double gamma = 0.9;
    double fmin = 0.0;
    double fmax = 100.0;
    double loudness_min = 1.0;
    double loudness_max = 2.0;
    double pulse_min = 0.0;
    double pulse_max = 1.0;
    std::string velocity_sign = "away";
    double c1 = 2.0;
    double c2 = 2.0;
    double inertia = 1.0;
    double pm = 0.05;
    double pc = 0.95;
};

void add_problem_options(CLI::App& cmd, Options& o) {
    cmd.add_option("--dim", o.dim, "Problem dimension (default: the function's default)");
    cmd.add_option("--max-evals", o.max_evals, "Evaluation budget per trial")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--pop,--population", o.population, "Population size")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--seed", o.seed, "Master seed");
    cmd.add_option("--out,-o", o.out, "Output file (default: standard output)");
}

void add_algorithm_overrides(CLI::App& cmd, Options& o) {
    cmd.add_option("--alpha", o.alpha, "Bat loudness decay");
    cmd.add_option("--gamma", o.gamma, "Bat pulse-rate growth");
    cmd.add_option("--fmin", o.fmin, "Bat minimum frequency");
    cmd.add_option("--fmax", o.fmax, "Bat maximum frequency");
    cmd.add_option("--loudness-min", o.loudness_min, "Bat initial loudness, lower end");
    cmd.add_option("--loudness-max", o.loudness_max, "Bat initial loudness, upper end");
    cmd.add_option("--pulse-min", o.pulse_min, "Bat initial pulse rate, lower end");
    cmd.add_option("--pulse-max", o.pulse_max, "Bat initial pulse rate, upper end");
    cmd.add_option("--velocity-sign", o.velocity_sign, "Bat velocity increment direction")
        ->check(CLI::IsMember({"away", "toward"}));
    cmd.add_option("--c1", o.c1, "PSO cognitive weight");
    cmd.add_option("--c2", o.c2, "PSO social weight");
    cmd.add_option("--inertia", o.inertia, "PSO inertia");
    cmd.add_option("--pm", o.pm, "GA per-gene mutation probability");
    cmd.add_option("--pc", o.pc, "GA crossover probability");
}

void add_experiment_options(CLI::App& cmd, Options& o) {
    cmd.add_option("--trials", o.trials, "Independent trials per algorithm")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--tolerance", o.tolerance, "Absolute tolerance on f - f_min")
        ->check(CLI::NonNegativeNumber);
    cmd.add_option("--threads", o.threads, "Worker threads (0 = hardware concurrency)");
    cmd.add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "jsonl"}));
}

AlgorithmConfig resolve_params(const Options& o, std::uint64_t max_iterations) {
    AlgorithmConfig p;
    p.set_population(o.population);
    p.bat.alpha = o.alpha;
    p.bat.gamma = o.gamma;
    p.bat.f_min = o.fmin;
    p.bat.f_max = o.fmax;
    p.bat.loudness0 = {o.loudness_min, o.loudness_max};
    p.bat.pulse_rate0 = {o.pulse_min, o.pulse_max};
    p.bat.velocity_sign =
        o.velocity_sign == "toward" ? VelocitySign::TowardBest : VelocitySign::AwayFromBest;
    p.pso.c1 = o.c1;
    p.pso.c2 = o.c2;
    p.pso.inertia = o.inertia;
    p.ga.p_mutation = o.pm;
    p.ga.p_crossover = o.pc;
    p.bat.max_iterations = max_iterations;
    p.pso.max_iterations = max_iterations;
    p.ga.max_generations = max_iterations;
    try {
        p.validate();
    } catch (const ContractViolation& e) {
        throw CliError{kExitBadFlags, e.what()};
    }
    return p;
}

std::vector<Algorithm> resolve_algorithms(const std::vector<std::string>& names) {
    if (names.empty()) throw CliError{kExitBadFlags, "no algorithms given"};
    std::vector<Algorithm> out;
    for (const auto& n : names) {
        try {
            out.push_back(parse_algorithm(n));
        } catch (const UnknownAlgorithm& e) {
            throw CliError{kExitUnknownName, e.what()};
        }
    }
    return out;
}

BenchmarkSpec resolve_spec(const std::string& name, std::size_t dim) {
    try {
        return dim == 0 ? benchmark_spec(name) : benchmark_spec(name, dim);
    } catch (const UnknownBenchmark& e) {
        throw CliError{kExitUnknownName, e.what()};
    } catch (const ContractViolation& e) {
        throw CliError{kExitBadFlags, e.what()};
    }
}

// The iteration cap never binds before the budget does in run/compare.
std::uint64_t iteration_cap_for_budget(const Options& o) {
    return o.max_evals / o.population + 1;
}

nlohmann::json params_json(const AlgorithmConfig& p) {
    using nlohmann::json;
    return json{
        {"bat",
         {{"n", p.bat.n},
          {"f_min", p.bat.f_min},
          {"f_max", p.bat.f_max},
          {"alpha", p.bat.alpha},
          {"gamma", p.bat.gamma},
          {"loudness0", {p.bat.loudness0.lo, p.bat.loudness0.hi}},
          {"pulse_rate0", {p.bat.pulse_rate0.lo, p.bat.pulse_rate0.hi}},
          {"velocity_sign",
           p.bat.velocity_sign == VelocitySign::TowardBest ? "toward" : "away"},
          {"max_iterations", p.bat.max_iterations}}},
        {"pso",
         {{"n", p.pso.n},
          {"c1", p.pso.c1},
          {"c2", p.pso.c2},
          {"inertia", p.pso.inertia},
          {"velocity_clamp_fraction", p.pso.velocity_clamp_fraction},
          {"max_iterations", p.pso.max_iterations}}},
        {"ga",
         {{"n", p.ga.n},
          {"p_mutation", p.ga.p_mutation},
          {"p_crossover", p.ga.p_crossover},
          {"mutation_sigma_fraction", p.ga.mutation_sigma_fraction},
          {"selection", "rank-proportional"},
          {"crossover", "uniform"},
          {"elitism", false},
          {"max_generations", p.ga.max_generations}}},
    };
}

nlohmann::json base_metadata(const std::string& subcommand, const std::vector<std::string>& args) {
    return nlohmann::json{
        {"tool_version", kToolVersion},
        {"subcommand", subcommand},
        {"argv", args},
        {"rng", RandomStream::kAlgorithm},
        {"seed_derivation", "splitmix64(splitmix64(splitmix64(master) ^ algorithm_stream) ^ trial)"},
    };
}

/// Writes text to --out (plus a .meta.json sidecar) or to standard output.
void emit(const Options& o, const std::string& text, const nlohmann::json& meta,
          std::ostream& out) {
    if (o.out.empty()) {
        out << text;
        out.flush();
        return;
    }
    std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
    if (!f) throw CliError{kExitRuntime, "cannot open output file '" + o.out + "'"};
    f << text;
    if (!f) throw CliError{kExitRuntime, "failed writing '" + o.out + "'"};
    std::ofstream m(o.out + ".meta.json", std::ios::binary | std::ios::trunc);
    if (!m) throw CliError{kExitRuntime, "cannot open metadata file '" + o.out + ".meta.json'"};
    m << meta.dump(2) << '\n';
}

const char* kStatisticsNote =
    "mean_evals and std_evals (sample, n-1) are over successful trials only; "
    "success means best_value - known_min <= tolerance checked at iteration boundaries; "
    "evaluation counts include the initial population";

int cmd_list_functions(std::ostream& out) {
    for (const BenchmarkInfo& info : benchmark_registry()) {
        out << info.name << '\t';
        if (info.fixed_dim) {
            out << "dim=" << *info.fixed_dim;
        } else {
            out << "dim>=1";
        }
        out << "\tdefault_dim=" << info.default_dim << '\t' << to_string(info.citation) << '\n';
    }
    return kExitOk;
}

int cmd_run(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
    const std::vector<Algorithm> algos = resolve_algorithms({o.algorithm});
    if (o.function.empty()) throw CliError{kExitBadFlags, "--function is required"};
    const BenchmarkSpec spec = resolve_spec(o.function, o.dim);
    if (!spec.objective.known_min) {
        throw CliError{kExitBadFlags, "function '" + spec.name + "' at d=" +
                                          std::to_string(spec.objective.dim) +
                                          " has no known minimum; tolerance runs need one"};
    }
    ExperimentConfig cfg;
    cfg.tolerance = o.tolerance;
    cfg.max_evaluations = o.max_evals;
    cfg.trials = o.trials;
    cfg.master_seed = o.seed;
    cfg.threads = o.threads;
    cfg.params = resolve_params(o, iteration_cap_for_budget(o));

    const auto results = run_experiment(algos, spec, cfg);
    std::ostringstream text;
    const bool csv = o.format == "csv";
    if (csv) text << io::kRunHeader << '\n';
    for (const AlgorithmSummary& s : results) {
        for (std::size_t k = 0; k < s.trials.size(); ++k) {
            const TrialResult& t = s.trials[k];
            if (csv) {
                text << io::csv_field(t.function) << ',' << t.dim << ',' << to_string(t.algorithm)
                     << ',' << k << ',' << t.seed << ',' << t.evaluations_used << ','
                     << (t.success ? "true" : "false") << ',' << io::format_real(t.best_value)
                     << ',' << t.iterations << ',' << to_string(t.stop_reason) << '\n';
            } else {
                nlohmann::json j{{"function", t.function},
                                 {"dim", t.dim},
                                 {"algorithm", to_string(t.algorithm)},
                                 {"trial", k},
                                 {"seed", t.seed},
                                 {"evaluations_used", t.evaluations_used},
                                 {"success", t.success},
                                 {"best_value", nullptr},
                                 {"iterations", t.iterations},
                                 {"stop_reason", to_string(t.stop_reason)}};
                std::string line = j.dump();
                // Keep the fixed 17-digit rendering for the real-valued field.
                const std::string key = "\"best_value\":null";
                line.replace(line.find(key), key.size(),
                             "\"best_value\":" + (std::isfinite(t.best_value)
                                                      ? io::format_real(t.best_value)
                                                      : std::string("null")));
                text << line << '\n';
            }
        }
    }
    nlohmann::json meta = base_metadata("run", args);
    meta["config"] = {{"algorithm", to_string(algos.front())},
                      {"function", spec.name},
                      {"dim", spec.objective.dim},
                      {"trials", cfg.trials},
                      {"tolerance", o.tolerance},
                      {"max_evals", o.max_evals},
                      {"master_seed", o.seed},
                      {"format", o.format},
                      {"params", params_json(cfg.params)}};
    meta["statistics"] = kStatisticsNote;
    emit(o, text.str(), meta, out);
    return kExitOk;
}

int cmd_compare(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
    const std::vector<Algorithm> algos = resolve_algorithms(o.algorithms);
    if (o.functions.empty()) throw CliError{kExitBadFlags, "--functions is required"};
    std::vector<BenchmarkSpec> specs;
    for (const auto& name : o.functions) {
        specs.push_back(resolve_spec(name, o.dim));
        if (!specs.back().objective.known_min) {
            throw CliError{kExitBadFlags, "function '" + specs.back().name + "' at d=" +
                                              std::to_string(specs.back().objective.dim) +
                                              " has no known minimum; tolerance runs need one"};
        }
    }
    ExperimentConfig cfg;
    cfg.tolerance = o.tolerance;
    cfg.max_evaluations = o.max_evals;
    cfg.trials = o.trials;
    cfg.master_seed = o.seed;
    cfg.threads = o.threads;
    cfg.params = resolve_params(o, iteration_cap_for_budget(o));

    std::ostringstream text;
    const bool csv = o.format == "csv";
    if (csv) text << io::kCompareHeader << '\n';
    const auto opt_real = [](const std::optional<double>& v) {
        return v ? io::format_real(*v) : std::string();
    };
    for (const BenchmarkSpec& spec : specs) {
        const auto results = run_experiment(algos, spec, cfg);
        for (const AlgorithmSummary& s : results) {
            const ExperimentSummary& sum = s.summary;
            if (csv) {
                text << io::csv_field(spec.name) << ',' << spec.objective.dim << ','
                     << to_string(s.algorithm) << ',' << sum.trial_count << ','
                     << opt_real(sum.mean_evals) << ',' << opt_real(sum.std_evals) << ','
                     << io::format_real(sum.success_rate) << ',' << o.seed << ','
                     << io::csv_field(kToolVersion) << '\n';
            } else {
                const auto jreal = [](const std::optional<double>& v) {
                    return v ? io::format_real(*v) : std::string("null");
                };
                text << "{\"function\":" << nlohmann::json(spec.name).dump()
                     << ",\"dim\":" << spec.objective.dim << ",\"algorithm\":\""
                     << to_string(s.algorithm) << "\",\"trials\":" << sum.trial_count
                     << ",\"mean_evals\":" << jreal(sum.mean_evals)
                     << ",\"std_evals\":" << jreal(sum.std_evals)
                     << ",\"success_rate\":" << io::format_real(sum.success_rate)
                     << ",\"master_seed\":" << o.seed << ",\"tool_version\":"
                     << nlohmann::json(kToolVersion).dump() << "}\n";
            }
        }
    }
    nlohmann::json meta = base_metadata("compare", args);
    std::vector<std::string> algo_names;
    for (Algorithm a : algos) algo_names.emplace_back(to_string(a));
    std::vector<nlohmann::json> fn_entries;
    for (const auto& s : specs) fn_entries.push_back({{"name", s.name}, {"dim", s.objective.dim}});
    meta["config"] = {{"algorithms", algo_names},
                      {"functions", fn_entries},
                      {"trials", cfg.trials},
                      {"tolerance", o.tolerance},
                      {"max_evals", o.max_evals},
                      {"master_seed", o.seed},
                      {"format", o.format},
                      {"params", params_json(cfg.params)}};
    meta["statistics"] = kStatisticsNote;
    emit(o, text.str(), meta, out);
    return kExitOk;
}

int cmd_trace(const Options& o, bool max_evals_given, const std::vector<std::string>& args,
              std::ostream& out) {
    const std::vector<Algorithm> algos = resolve_algorithms({o.algorithm});
    if (o.function.empty()) throw CliError{kExitBadFlags, "--function is required"};
    if (o.iterations < 1) throw CliError{kExitBadFlags, "--iters must be >= 1"};
    const BenchmarkSpec spec = resolve_spec(o.function, o.dim);

    TrialConfig tc;
    tc.tolerance = std::nullopt;
    tc.max_evaluations = max_evals_given ? o.max_evals : o.population * (o.iterations + 1);
    tc.seed = o.seed;
    tc.params = resolve_params(o, o.iterations);

    std::ostringstream text;
    const bool csv = o.format == "csv";
    if (csv) {
        text << "iter,index,best";
        for (std::size_t k = 0; k < spec.objective.dim; ++k) text << ",x" << k;
        text << '\n';
    }
    tc.recorder = [&](const TrajectoryRecord& r) {
        if (!csv) {
            text << io::trace_jsonl_line(r) << '\n';
            return;
        }
        for (std::size_t i = 0; i < r.positions.size(); ++i) {
            text << r.iteration << ',' << i << ',' << io::format_real(r.best_value);
            for (std::size_t k = 0; k < r.positions[i].dim(); ++k) {
                text << ',' << io::format_real(r.positions[i][k]);
            }
            text << '\n';
        }
    };
    const TrialResult result = run_trial(algos.front(), spec, tc);

    nlohmann::json meta = base_metadata("trace", args);
    meta["config"] = {{"algorithm", to_string(algos.front())},
                      {"function", spec.name},
                      {"dim", spec.objective.dim},
                      {"iterations", o.iterations},
                      {"max_evals", tc.max_evaluations},
                      {"seed", o.seed},
                      {"format", o.format},
                      {"params", params_json(tc.params)}};
    meta["result"] = {{"iterations", result.iterations},
                      {"evaluations", result.evaluations_used},
                      {"best_value", io::format_real(result.best_value)}};
    emit(o, text.str(), meta, out);
    return kExitOk;
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Bat algorithm, PSO and GA on continuous benchmark functions", "batopt"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    CLI::App* list = app.add_subcommand("list-functions", "List registered benchmark functions");

    CLI::App* run = app.add_subcommand("run", "Run seeded trials of one algorithm, one row per trial");
    run->add_option("--algorithm,-a", o.algorithm, "bat, pso or ga");
    run->add_option("--function,-f", o.function, "Benchmark function")->required();
    add_problem_options(*run, o);
    add_experiment_options(*run, o);
    add_algorithm_overrides(*run, o);

    CLI::App* compare = app.add_subcommand(
        "compare", "Evaluations-to-tolerance summary per (function, algorithm)");
    compare->add_option("--functions", o.functions, "Comma-separated benchmark functions")
        ->required()
        ->delimiter(',');
    compare->add_option("--algorithms", o.algorithms, "Comma-separated algorithms")
        ->delimiter(',');
    add_problem_options(*compare, o);
    add_experiment_options(*compare, o);
    add_algorithm_overrides(*compare, o);

    CLI::App* trace = app.add_subcommand("trace", "Per-iteration population snapshots of one run");
    trace->add_option("--algorithm,-a", o.algorithm, "bat, pso or ga");
    trace->add_option("--function,-f", o.function, "Benchmark function")->required();
    trace->add_option("--iters", o.iterations, "Iterations to record")->check(CLI::PositiveNumber);
    add_problem_options(*trace, o);
    trace->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "jsonl"}));
    add_algorithm_overrides(*trace, o);

    std::vector<std::string> argv_copy(args.begin(), args.end());
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "batopt: " << e.what() << '\n';
        return kExitBadFlags;
    }
    // Traces default to line-delimited records.
    if (trace->parsed() && trace->count("--format") == 0) o.format = "jsonl";

    try {
        if (list->parsed()) return cmd_list_functions(out);
        if (run->parsed()) return cmd_run(o, argv_copy, out);
        if (compare->parsed()) return cmd_compare(o, argv_copy, out);
        if (trace->parsed()) return cmd_trace(o, trace->count("--max-evals") > 0, argv_copy, out);
    } catch (const CliError& e) {
        err << "batopt: " << e.message << '\n';
        return e.code;
    } catch (const std::exception& e) {
        err << "batopt: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitBadFlags;
}

}  // namespace batopt
