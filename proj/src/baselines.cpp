#include "batopt/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace batopt {

namespace {

void record_population(const RunOptions& options, std::uint64_t iteration,
                       std::vector<Point> positions, double best_value,
                       const Point& best_position) {
    if (!options.recorder) return;
    options.recorder(TrajectoryRecord{iteration, std::move(positions), best_value, best_position});
}

}  // namespace

void PsoParams::validate() const {
    const auto fail = [](const std::string& msg) { throw ContractViolation("PsoParams: " + msg); };
    if (n < 2) fail("population size n must be >= 2");
    if (!(c1 >= 0.0) || !(c2 >= 0.0)) fail("c1 and c2 must be non-negative");
    if (!std::isfinite(inertia)) fail("inertia must be finite");
    if (!(velocity_clamp_fraction > 0.0)) fail("velocity clamp fraction must be positive");
    if (max_iterations < 1) fail("max_iterations must be >= 1");
}

void pso_move(Particle& p, const Point& global_best, const PsoParams& params,
              const Bounds& bounds, RandomStream& rng) {
    for (std::size_t k = 0; k < p.position.dim(); ++k) {
        const double u1 = rng.uniform();
        const double u2 = rng.uniform();
        const double vmax = params.velocity_clamp_fraction * bounds.width(k);
        double v = params.inertia * p.velocity[k] +
                   params.c1 * u1 * (p.best_position[k] - p.position[k]) +
                   params.c2 * u2 * (global_best[k] - p.position[k]);
        v = std::clamp(v, -vmax, vmax);
        p.velocity[k] = v;
        p.position[k] += v;
    }
    clamp_in_place(p.position, bounds);
}

RunOutcome run_pso(const PsoParams& params, const Objective& obj, const RunOptions& options) {
    params.validate();
    detail::check_stop_at(obj, options.stop_at);
    RandomStream rng(options.seed);
    EvalBudget budget(options.max_evaluations);
    if (budget.remaining() < params.n) throw BudgetExceeded();

    std::vector<Particle> swarm(params.n);
    for (Particle& p : swarm) {
        p.position = uniform_sample(obj.bounds, rng);
        p.velocity.assign(obj.dim, 0.0);
    }
    std::size_t best = 0;
    for (std::size_t i = 0; i < swarm.size(); ++i) {
        swarm[i].best_position = swarm[i].position;
        swarm[i].best_value = counted_evaluate(obj, swarm[i].position, budget);
        if (swarm[i].best_value < swarm[best].best_value) best = i;
    }
    Point gbest = swarm[best].best_position;
    double gbest_value = swarm[best].best_value;

    RunOutcome outcome;
    std::uint64_t iteration = 0;
    for (;;) {
        if (detail::target_reached(obj, options.stop_at, gbest_value)) {
            outcome.stop_reason = StopReason::TargetReached;
            outcome.evaluations_to_target = budget.used();
            break;
        }
        if (iteration >= params.max_iterations) {
            outcome.stop_reason = StopReason::MaxIterations;
            break;
        }
        if (budget.remaining() < params.n) {
            outcome.stop_reason = StopReason::BudgetExhausted;
            break;
        }
        // Synchronous update: every particle moves against the same global best.
        for (Particle& p : swarm) pso_move(p, gbest, params, obj.bounds, rng);
        for (Particle& p : swarm) {
            const double value = counted_evaluate(obj, p.position, budget);
            if (value < p.best_value) {
                p.best_value = value;
                p.best_position = p.position;
            }
        }
        for (const Particle& p : swarm) {
            if (p.best_value < gbest_value) {
                gbest_value = p.best_value;
                gbest = p.best_position;
            }
        }
        ++iteration;
        if (options.recorder) {
            std::vector<Point> positions;
            positions.reserve(swarm.size());
            for (const Particle& p : swarm) positions.push_back(p.position);
            record_population(options, iteration, std::move(positions), gbest_value, gbest);
        }
    }
    outcome.best_position = std::move(gbest);
    outcome.best_value = gbest_value;
    outcome.evaluations = budget.used();
    outcome.iterations = iteration;
    return outcome;
}

void GaParams::validate() const {
    const auto fail = [](const std::string& msg) { throw ContractViolation("GaParams: " + msg); };
    if (n < 2) fail("population size n must be >= 2");
    if (!(p_mutation >= 0.0 && p_mutation <= 1.0)) fail("p_mutation must lie in [0, 1]");
    if (!(p_crossover >= 0.0 && p_crossover <= 1.0)) fail("p_crossover must lie in [0, 1]");
    if (!(mutation_sigma_fraction >= 0.0) || !std::isfinite(mutation_sigma_fraction)) {
        fail("mutation sigma fraction must be non-negative");
    }
    if (max_generations < 1) fail("max_generations must be >= 1");
}

std::vector<double> rank_weights(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    // order runs worst to best, so the best lands on weight n.
    std::vector<double> weights(values.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        weights[order[r]] = static_cast<double>(r + 1);
    }
    return weights;
}

namespace {

std::size_t roulette(std::span<const double> cumulative, RandomStream& rng) {
    const double target = rng.uniform() * cumulative.back();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    return static_cast<std::size_t>(
        std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                 static_cast<std::ptrdiff_t>(cumulative.size()) - 1));
}

void mutate(Point& child, const GaParams& params, const Bounds& bounds, RandomStream& rng,
            GaOperatorStats* stats) {
    for (std::size_t k = 0; k < child.dim(); ++k) {
        if (stats) ++stats->genes;
        if (rng.uniform() < params.p_mutation) {
            if (stats) ++stats->mutations;
            child[k] += params.mutation_sigma_fraction * bounds.width(k) * rng.normal();
        }
    }
    clamp_in_place(child, bounds);
}

}  // namespace

std::vector<Point> breed_generation(std::span<const Point> population,
                                    std::span<const double> values, const GaParams& params,
                                    const Bounds& bounds, RandomStream& rng,
                                    GaOperatorStats* stats) {
    if (population.empty() || population.size() != values.size()) {
        throw ContractViolation("breed_generation: population and values must match and be non-empty");
    }
    const std::vector<double> weights = rank_weights(values);
    std::vector<double> cumulative(weights.size());
    std::partial_sum(weights.begin(), weights.end(), cumulative.begin());

    std::vector<Point> offspring;
    offspring.reserve(population.size());
    while (offspring.size() < population.size()) {
        Point a = population[roulette(cumulative, rng)];
        Point b = population[roulette(cumulative, rng)];
        if (stats) ++stats->pairings;
        if (rng.uniform() < params.p_crossover) {
            if (stats) ++stats->crossovers;
            for (std::size_t k = 0; k < a.dim(); ++k) {
                if (rng.uniform() < 0.5) std::swap(a[k], b[k]);
            }
        }
        mutate(a, params, bounds, rng, stats);
        offspring.push_back(std::move(a));
        if (offspring.size() < population.size()) {
            mutate(b, params, bounds, rng, stats);
            offspring.push_back(std::move(b));
        }
    }
    return offspring;
}

RunOutcome run_ga(const GaParams& params, const Objective& obj, const RunOptions& options,
                  GaOperatorStats* stats) {
    params.validate();
    detail::check_stop_at(obj, options.stop_at);
    RandomStream rng(options.seed);
    EvalBudget budget(options.max_evaluations);
    if (budget.remaining() < params.n) throw BudgetExceeded();

    std::vector<Point> population;
    population.reserve(params.n);
    for (std::size_t i = 0; i < params.n; ++i) population.push_back(uniform_sample(obj.bounds, rng));

    std::vector<double> values(params.n);
    Point best_ever;
    double best_ever_value = 0.0;
    const auto evaluate_all = [&] {
        for (std::size_t i = 0; i < population.size(); ++i) {
            values[i] = counted_evaluate(obj, population[i], budget);
            if (best_ever.dim() == 0 || values[i] < best_ever_value) {
                best_ever_value = values[i];
                best_ever = population[i];
            }
        }
    };
    evaluate_all();

    RunOutcome outcome;
    std::uint64_t generation = 0;
    for (;;) {
        if (detail::target_reached(obj, options.stop_at, best_ever_value)) {
            outcome.stop_reason = StopReason::TargetReached;
            outcome.evaluations_to_target = budget.used();
            break;
        }
        if (generation >= params.max_generations) {
            outcome.stop_reason = StopReason::MaxIterations;
            break;
        }
        if (budget.remaining() < params.n) {
            outcome.stop_reason = StopReason::BudgetExhausted;
            break;
        }
        population = breed_generation(population, values, params, obj.bounds, rng, stats);
        evaluate_all();
        ++generation;
        if (options.recorder) {
            record_population(options, generation, population, best_ever_value, best_ever);
        }
    }
    outcome.best_position = std::move(best_ever);
    outcome.best_value = best_ever_value;
    outcome.evaluations = budget.used();
    outcome.iterations = generation;
    return outcome;
}

}  // namespace batopt
