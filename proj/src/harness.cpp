#include "batopt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace batopt {

std::string_view to_string(Algorithm a) {
    switch (a) {
        case Algorithm::Bat: return "bat";
        case Algorithm::Pso: return "pso";
        case Algorithm::Ga: return "ga";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view name) {
    if (name == "bat" || name == "ba") return Algorithm::Bat;
    if (name == "pso") return Algorithm::Pso;
    if (name == "ga") return Algorithm::Ga;
    throw UnknownAlgorithm(name);
}

void AlgorithmConfig::set_population(std::size_t n) {
    bat.n = n;
    pso.n = n;
    ga.n = n;
}

void AlgorithmConfig::validate() const {
    bat.validate();
    pso.validate();
    ga.validate();
}

bool same_outcome(const TrialResult& a, const TrialResult& b) {
    const bool same_best = a.best_value == b.best_value ||
                           (std::isnan(a.best_value) && std::isnan(b.best_value));
    return a.algorithm == b.algorithm && a.function == b.function && a.dim == b.dim &&
           a.seed == b.seed && a.evaluations_used == b.evaluations_used &&
           a.success == b.success && same_best && a.iterations == b.iterations &&
           a.stop_reason == b.stop_reason;
}

TrialResult run_trial(Algorithm algorithm, const BenchmarkSpec& spec, const TrialConfig& config) {
    const Objective& obj = spec.objective;
    detail::check_stop_at(obj, config.tolerance);

    RunOptions options;
    options.seed = config.seed;
    options.max_evaluations = config.max_evaluations;
    options.stop_at = config.tolerance;
    options.recorder = config.recorder;

    TrialResult result;
    result.algorithm = algorithm;
    result.function = spec.name;
    result.dim = obj.dim;
    result.seed = config.seed;

    const auto start = std::chrono::steady_clock::now();
    RunOutcome outcome;
    try {
        switch (algorithm) {
            case Algorithm::Bat: outcome = run_bat(config.params.bat, obj, options).outcome; break;
            case Algorithm::Pso: outcome = run_pso(config.params.pso, obj, options); break;
            case Algorithm::Ga: outcome = run_ga(config.params.ga, obj, options); break;
        }
    } catch (const BudgetExceeded&) {
        // The budget cannot even cover the initial population.
        outcome = RunOutcome{};
        outcome.best_value = std::numeric_limits<double>::infinity();
        outcome.stop_reason = StopReason::BudgetExhausted;
    }
    const auto stop = std::chrono::steady_clock::now();

    result.success = outcome.evaluations_to_target.has_value();
    result.evaluations_used = outcome.evaluations_to_target.value_or(outcome.evaluations);
    result.best_value = outcome.best_value;
    result.iterations = outcome.iterations;
    result.stop_reason = outcome.stop_reason;
    result.wall_time_seconds = std::chrono::duration<double>(stop - start).count();
    return result;
}

ExperimentSummary summarize(std::span<const TrialResult> results) {
    if (results.empty()) throw ContractViolation("summarize: no trial results");
    ExperimentSummary s;
    s.trial_count = results.size();

    double sum = 0.0;
    for (const TrialResult& r : results) {
        if (!r.success) continue;
        ++s.successes;
        sum += static_cast<double>(r.evaluations_used);
    }
    s.success_rate = static_cast<double>(s.successes) / static_cast<double>(s.trial_count);
    if (s.successes == 0) return s;

    const double mean = sum / static_cast<double>(s.successes);
    s.mean_evals = mean;
    if (s.successes >= 2) {
        double ss = 0.0;
        for (const TrialResult& r : results) {
            if (!r.success) continue;
            const double d = static_cast<double>(r.evaluations_used) - mean;
            ss += d * d;
        }
        s.std_evals = std::sqrt(ss / static_cast<double>(s.successes - 1));
    }
    return s;
}

std::uint64_t trial_seed(std::uint64_t master_seed, Algorithm algorithm, std::uint64_t k) {
    // Stream ids are fixed so that adding algorithms never reshuffles old seeds.
    std::uint64_t stream = 0;
    switch (algorithm) {
        case Algorithm::Bat: stream = 0xBA7; break;
        case Algorithm::Pso: stream = 0x950; break;
        case Algorithm::Ga: stream = 0x6A; break;
    }
    return derive_seed(master_seed, stream, k);
}

std::vector<AlgorithmSummary> run_experiment(std::span<const Algorithm> algorithms,
                                             const BenchmarkSpec& spec,
                                             const ExperimentConfig& config) {
    if (config.trials < 1) throw ContractViolation("run_experiment: trials must be >= 1");
    config.params.validate();
    detail::check_stop_at(spec.objective, config.tolerance);

    struct Job {
        std::size_t algo_index;
        std::size_t trial;
    };
    std::vector<Job> jobs;
    jobs.reserve(algorithms.size() * config.trials);
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
        for (std::size_t k = 0; k < config.trials; ++k) jobs.push_back({a, k});
    }

    std::vector<AlgorithmSummary> out(algorithms.size());
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
        out[a].algorithm = algorithms[a];
        out[a].trials.resize(config.trials);
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto worker = [&] {
        for (;;) {
            const std::size_t j = next.fetch_add(1);
            if (j >= jobs.size()) return;
            const Job job = jobs[j];
            try {
                TrialConfig tc;
                tc.tolerance = config.tolerance;
                tc.max_evaluations = config.max_evaluations;
                tc.seed = trial_seed(config.master_seed, algorithms[job.algo_index], job.trial);
                tc.params = config.params;
                out[job.algo_index].trials[job.trial] =
                    run_trial(algorithms[job.algo_index], spec, tc);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(jobs.size());
                return;
            }
        }
    };

    std::size_t threads = config.threads != 0 ? config.threads
                                              : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, std::max<std::size_t>(jobs.size(), 1));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    for (AlgorithmSummary& s : out) s.summary = summarize(s.trials);
    return out;
}

}  // namespace batopt
