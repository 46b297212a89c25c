#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "batopt/core.hpp"
#include "batopt/run.hpp"

namespace batopt {

/// Global-best particle swarm with constant inertia.
struct PsoParams {
    std::size_t n = 40;
    double c1 = 2.0;  // cognitive (personal best) weight
    double c2 = 2.0;  // social (global best) weight
    double inertia = 1.0;
    /// |v_k| is capped at this fraction of the coordinate range.
    double velocity_clamp_fraction = 0.5;
    std::uint64_t max_iterations = 1000;

    void validate() const;
};

struct Particle {
    Point position;
    std::vector<double> velocity;
    Point best_position;
    double best_value = 0.0;
};

/// Moves one particle in place. Draws u1[k], u2[k] for each coordinate k in
/// turn (2d unit draws).
void pso_move(Particle& p, const Point& global_best, const PsoParams& params,
              const Bounds& bounds, RandomStream& rng);

[[nodiscard]] RunOutcome run_pso(const PsoParams& params, const Objective& obj,
                                 const RunOptions& options);

/// Generational real-coded GA without elitism.
struct GaParams {
    std::size_t n = 40;
    double p_mutation = 0.05;
    double p_crossover = 0.95;
    /// Mutation standard deviation as a fraction of each coordinate's range.
    double mutation_sigma_fraction = 0.1;
    std::uint64_t max_generations = 1000;

    void validate() const;
};

/// Operator counters, used to check empirical crossover and mutation rates.
struct GaOperatorStats {
    std::uint64_t pairings = 0;
    std::uint64_t crossovers = 0;
    std::uint64_t genes = 0;
    std::uint64_t mutations = 0;
};

/// Selection weights for rank-proportional selection: the best of n values
/// gets weight n, the worst weight 1. Ties are broken by index.
[[nodiscard]] std::vector<double> rank_weights(std::span<const double> values);

/// Breeds one full generation of exactly population.size() offspring:
/// rank-proportional parent selection, uniform crossover with probability
/// p_crossover per pairing and per-gene Gaussian mutation with probability
/// p_mutation, clamped to bounds.
[[nodiscard]] std::vector<Point> breed_generation(std::span<const Point> population,
                                                  std::span<const double> values,
                                                  const GaParams& params, const Bounds& bounds,
                                                  RandomStream& rng,
                                                  GaOperatorStats* stats = nullptr);

/// The best-ever individual is tracked for reporting only and never
/// reinserted into the population.
[[nodiscard]] RunOutcome run_ga(const GaParams& params, const Objective& obj,
                                const RunOptions& options, GaOperatorStats* stats = nullptr);

}  // namespace batopt
