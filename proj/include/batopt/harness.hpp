#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "batopt/baselines.hpp"
#include "batopt/bat.hpp"
#include "batopt/benchmarks.hpp"
#include "batopt/run.hpp"

namespace batopt {

enum class Algorithm { Bat, Pso, Ga };

class UnknownAlgorithm : public std::out_of_range {
public:
    explicit UnknownAlgorithm(std::string_view name)
        : std::out_of_range("unknown algorithm '" + std::string(name) + "'") {}
};

[[nodiscard]] std::string_view to_string(Algorithm a);
/// Accepts "bat", "pso", "ga". Throws UnknownAlgorithm.
[[nodiscard]] Algorithm parse_algorithm(std::string_view name);

/// Parameters for all three algorithms; only the one being run is used.
struct AlgorithmConfig {
    BatParams bat;
    PsoParams pso;
    GaParams ga;

    /// Sets the population size of every algorithm.
    void set_population(std::size_t n);
    void validate() const;
};

inline constexpr double kDefaultTolerance = 1e-5;
inline constexpr std::uint64_t kDefaultMaxEvaluations = 10'000;
inline constexpr std::size_t kDefaultTrials = 100;

struct TrialResult {
    Algorithm algorithm = Algorithm::Bat;
    std::string function;
    std::size_t dim = 0;
    std::uint64_t seed = 0;
    /// Evaluations at first success, or all evaluations spent when unsuccessful.
    std::uint64_t evaluations_used = 0;
    bool success = false;
    /// +infinity when the budget could not cover the initial population.
    double best_value = 0.0;
    std::uint64_t iterations = 0;
    StopReason stop_reason = StopReason::MaxIterations;
    double wall_time_seconds = 0.0;
};

/// Trial outcome fields only, ignoring wall time.
[[nodiscard]] bool same_outcome(const TrialResult& a, const TrialResult& b);

struct TrialConfig {
    /// Absolute function-value tolerance for success; unset disables early stopping.
    std::optional<double> tolerance = kDefaultTolerance;
    std::uint64_t max_evaluations = kDefaultMaxEvaluations;
    std::uint64_t seed = 0;
    TrajectorySink recorder;
    AlgorithmConfig params;
};

/// Runs one seeded trial. Success means best_value - known_min <= tolerance
/// at an iteration boundary before the budget ran out.
[[nodiscard]] TrialResult run_trial(Algorithm algorithm, const BenchmarkSpec& spec,
                                    const TrialConfig& config);

struct ExperimentSummary {
    std::size_t trial_count = 0;
    std::size_t successes = 0;
    double success_rate = 0.0;
    /// Over successful trials only; absent when no trial succeeded.
    std::optional<double> mean_evals;
    /// Sample standard deviation (n-1); absent with fewer than two successes.
    std::optional<double> std_evals;
};

/// Throws ContractViolation on an empty list.
[[nodiscard]] ExperimentSummary summarize(std::span<const TrialResult> results);

struct ExperimentConfig {
    std::optional<double> tolerance = kDefaultTolerance;
    std::uint64_t max_evaluations = kDefaultMaxEvaluations;
    std::size_t trials = kDefaultTrials;
    std::uint64_t master_seed = 0;
    /// Worker threads; 0 picks the hardware concurrency.
    std::size_t threads = 0;
    AlgorithmConfig params;
};

struct AlgorithmSummary {
    Algorithm algorithm = Algorithm::Bat;
    ExperimentSummary summary;
    /// Ordered by trial index.
    std::vector<TrialResult> trials;
};

/// Seed for trial k of an algorithm under a master seed.
[[nodiscard]] std::uint64_t trial_seed(std::uint64_t master_seed, Algorithm algorithm,
                                       std::uint64_t k);

/// Runs config.trials seeded trials per algorithm, possibly in parallel. The
/// result is independent of thread count and completion order.
[[nodiscard]] std::vector<AlgorithmSummary> run_experiment(std::span<const Algorithm> algorithms,
                                                           const BenchmarkSpec& spec,
                                                           const ExperimentConfig& config);

}  // namespace batopt
