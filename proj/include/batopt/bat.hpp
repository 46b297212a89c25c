#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "batopt/core.hpp"
#include "batopt/run.hpp"

namespace batopt {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Direction of the frequency-scaled velocity increment.
///
/// AwayFromBest is the increment as originally printed, (x_i - x_*) * f_i.
/// TowardBest flips it to (x_* - x_i) * f_i, the form most later
/// implementations use. Not the default.
enum class VelocitySign { AwayFromBest, TowardBest };

struct BatParams {
    std::size_t n = 40;
    double f_min = 0.0;
    double f_max = 100.0;
    /// Loudness decay per accepted move.
    double alpha = 0.9;
    /// Pulse-rate growth rate.
    double gamma = 0.9;
    Interval loudness0{1.0, 2.0};
    Interval pulse_rate0{0.0, 1.0};
    std::uint64_t max_iterations = 1000;
    VelocitySign velocity_sign = VelocitySign::AwayFromBest;

    /// Throws ContractViolation when a field is out of range.
    void validate() const;
};

struct Bat {
    Point position;
    std::vector<double> velocity;
    double value = 0.0;  // objective at position
    double frequency = 0.0;
    double loudness = 0.0;
    double initial_loudness = 0.0;
    double pulse_rate = 0.0;
    double initial_pulse_rate = 0.0;
    /// Iteration counter value at each accepted move, in order.
    std::vector<std::uint64_t> acceptance_log;
};

struct BatState {
    std::vector<Bat> bats;
    Point best_position;
    double best_value = 0.0;
    std::uint64_t iteration = 0;
    RandomStream rng;
    EvalBudget budget;
    bool budget_terminated = false;
};

/// Draws the initial swarm and evaluates every bat (n evaluations).
///
/// Draw order per bat: d position coordinates, frequency, loudness, initial
/// pulse rate. Velocities start at zero. Throws BudgetExceeded when the budget
/// cannot cover n evaluations (nothing is evaluated in that case).
[[nodiscard]] BatState init_bats(const BatParams& params, const Objective& obj, RandomStream rng,
                                 EvalBudget budget);

struct GlobalMove {
    std::vector<double> velocity;
    Point position;
    double frequency = 0.0;
};

/// Frequency draw plus velocity and position update for one bat. Consumes one
/// unit draw (beta).
[[nodiscard]] GlobalMove frequency_and_global_move(const Bat& bat, const Point& best,
                                                   const BatParams& params, const Bounds& bounds,
                                                   RandomStream& rng);

/// Same update with beta supplied by the caller.
[[nodiscard]] GlobalMove global_move_with_beta(const Bat& bat, const Point& best,
                                               const BatParams& params, const Bounds& bounds,
                                               double beta);

/// clamp(base + eps * avg_loudness) with one eps in [-1, 1) drawn per coordinate.
[[nodiscard]] Point local_walk(const Point& base, double avg_loudness, const Bounds& bounds,
                               RandomStream& rng);

/// Same walk with the per-coordinate eps supplied by the caller.
[[nodiscard]] Point local_walk_with_steps(const Point& base, double avg_loudness,
                                          const Bounds& bounds, std::span<const double> eps);

[[nodiscard]] double average_loudness(std::span<const Bat> bats);
[[nodiscard]] double average_loudness(const BatState& state);

/// Pulse rate after an acceptance at iteration t: r0 * (1 - exp(-gamma * t)).
[[nodiscard]] double pulse_rate_at(double initial_pulse_rate, double gamma, std::uint64_t t);

/// Gated acceptance for bat `index`. Draws one unit value u from state.rng and
/// accepts iff u < A_i and candidate_value < best_value (strict). On
/// acceptance the bat moves, A_i *= alpha, r_i is recomputed from the current
/// iteration and the global best follows the candidate.
bool accept_and_update(BatState& state, std::size_t index, const Point& candidate,
                       double candidate_value, const BatParams& params);

/// accept_and_update with the gate draw supplied by the caller.
bool accept_with_draw(BatState& state, std::size_t index, const Point& candidate,
                      double candidate_value, const BatParams& params, double draw);

/// One pass over the swarm in index order: exactly one candidate and one
/// evaluation per bat, then the iteration counter advances and the best is
/// re-ranked. Returns false when the budget ran out part-way; the state is then
/// flagged budget_terminated and the iteration counter is not advanced.
bool bat_step(BatState& state, const BatParams& params, const Objective& obj);

struct BatRun {
    BatState state;
    RunOutcome outcome;
};

/// Runs the full loop until max_iterations, until a full iteration no longer
/// fits in the budget, or until the stop tolerance is met at an iteration
/// boundary. The recorder, when set, receives every bat position after each
/// iteration.
[[nodiscard]] BatRun run_bat(const BatParams& params, const Objective& obj,
                             const RunOptions& options);

}  // namespace batopt
