#include "batopt/bat.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace batopt {

void BatParams::validate() const {
    const auto fail = [](const std::string& msg) { throw ContractViolation("BatParams: " + msg); };
    if (n < 1) fail("population size n must be >= 1");
    // f_min == f_max is allowed: it pins every frequency to one value.
    if (!(f_min >= 0.0 && f_min <= f_max) || !std::isfinite(f_max)) {
        fail("require 0 <= f_min <= f_max");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) fail("alpha must lie in (0, 1)");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) fail("gamma must be positive");
    if (!(loudness0.lo > 0.0 && loudness0.lo <= loudness0.hi) || !std::isfinite(loudness0.hi)) {
        fail("initial loudness range must satisfy 0 < lo <= hi");
    }
    if (!(pulse_rate0.lo >= 0.0 && pulse_rate0.lo <= pulse_rate0.hi && pulse_rate0.hi <= 1.0)) {
        fail("initial pulse rate range must lie inside [0, 1]");
    }
    if (max_iterations < 1) fail("max_iterations must be >= 1");
}

BatState init_bats(const BatParams& params, const Objective& obj, RandomStream rng,
                   EvalBudget budget) {
    params.validate();
    if (budget.remaining() < params.n) throw BudgetExceeded();

    std::vector<Bat> bats;
    bats.reserve(params.n);
    for (std::size_t i = 0; i < params.n; ++i) {
        Bat bat;
        bat.position = uniform_sample(obj.bounds, rng);
        bat.velocity.assign(obj.dim, 0.0);
        bat.frequency = rng.uniform(params.f_min, params.f_max);
        bat.loudness = rng.uniform(params.loudness0.lo, params.loudness0.hi);
        bat.initial_loudness = bat.loudness;
        bat.initial_pulse_rate = rng.uniform(params.pulse_rate0.lo, params.pulse_rate0.hi);
        bat.pulse_rate = bat.initial_pulse_rate;
        bats.push_back(std::move(bat));
    }
    std::size_t best = 0;
    for (std::size_t i = 0; i < bats.size(); ++i) {
        bats[i].value = counted_evaluate(obj, bats[i].position, budget);
        if (bats[i].value < bats[best].value) best = i;
    }
    Point best_position = bats[best].position;
    const double best_value = bats[best].value;
    return BatState{std::move(bats), std::move(best_position), best_value, 0, std::move(rng),
                    budget, false};
}

GlobalMove global_move_with_beta(const Bat& bat, const Point& best, const BatParams& params,
                                 const Bounds& bounds, double beta) {
    if (bat.position.dim() != best.dim()) {
        throw ContractViolation("global move: bat and best differ in dimension");
    }
    GlobalMove move;
    move.frequency = params.f_min + (params.f_max - params.f_min) * beta;
    const double sign = params.velocity_sign == VelocitySign::AwayFromBest ? 1.0 : -1.0;
    move.velocity = bat.velocity;
    move.position = bat.position;
    for (std::size_t k = 0; k < best.dim(); ++k) {
        move.velocity[k] += sign * (bat.position[k] - best[k]) * move.frequency;
        move.position[k] += move.velocity[k];
    }
    clamp_in_place(move.position, bounds);
    return move;
}

GlobalMove frequency_and_global_move(const Bat& bat, const Point& best, const BatParams& params,
                                     const Bounds& bounds, RandomStream& rng) {
    return global_move_with_beta(bat, best, params, bounds, rng.uniform());
}

Point local_walk_with_steps(const Point& base, double avg_loudness, const Bounds& bounds,
                            std::span<const double> eps) {
    if (avg_loudness < 0.0) throw ContractViolation("local walk: average loudness must be >= 0");
    if (eps.size() != base.dim()) throw ContractViolation("local walk: one step per coordinate");
    Point out = base;
    for (std::size_t k = 0; k < out.dim(); ++k) out[k] += eps[k] * avg_loudness;
    clamp_in_place(out, bounds);
    return out;
}

Point local_walk(const Point& base, double avg_loudness, const Bounds& bounds,
                 RandomStream& rng) {
    std::vector<double> eps(base.dim());
    for (double& e : eps) e = rng.symmetric();
    return local_walk_with_steps(base, avg_loudness, bounds, eps);
}

double average_loudness(std::span<const Bat> bats) {
    if (bats.empty()) throw ContractViolation("average_loudness: empty swarm");
    const double sum = std::accumulate(bats.begin(), bats.end(), 0.0,
                                       [](double acc, const Bat& b) { return acc + b.loudness; });
    return sum / static_cast<double>(bats.size());
}

double average_loudness(const BatState& state) { return average_loudness(state.bats); }

double pulse_rate_at(double initial_pulse_rate, double gamma, std::uint64_t t) {
    return initial_pulse_rate * (1.0 - std::exp(-gamma * static_cast<double>(t)));
}

bool accept_with_draw(BatState& state, std::size_t index, const Point& candidate,
                      double candidate_value, const BatParams& params, double draw) {
    Bat& bat = state.bats.at(index);
    if (!(draw < bat.loudness && candidate_value < state.best_value)) return false;

    bat.position = candidate;
    bat.value = candidate_value;
    bat.acceptance_log.push_back(state.iteration);
    // A_i = alpha^k * A_i^0 after k acceptances, evaluated in closed form so
    // that rounding does not accumulate over long runs.
    bat.loudness = bat.initial_loudness *
                   std::pow(params.alpha, static_cast<double>(bat.acceptance_log.size()));
    bat.pulse_rate = pulse_rate_at(bat.initial_pulse_rate, params.gamma, state.iteration);
    state.best_position = candidate;
    state.best_value = candidate_value;
    return true;
}

bool accept_and_update(BatState& state, std::size_t index, const Point& candidate,
                       double candidate_value, const BatParams& params) {
    const double draw = state.rng.uniform();
    return accept_with_draw(state, index, candidate, candidate_value, params, draw);
}

bool bat_step(BatState& state, const BatParams& params, const Objective& obj) {
    if (state.budget.exhausted()) {
        state.budget_terminated = true;
        return false;
    }
    for (std::size_t i = 0; i < state.bats.size(); ++i) {
        Bat& bat = state.bats[i];
        GlobalMove move =
            frequency_and_global_move(bat, state.best_position, params, obj.bounds, state.rng);
        bat.velocity = std::move(move.velocity);
        bat.frequency = move.frequency;
        Point candidate = std::move(move.position);

        if (state.rng.uniform() > bat.pulse_rate) {
            candidate = local_walk(state.best_position, average_loudness(state), obj.bounds,
                                   state.rng);
        }

        double value = 0.0;
        try {
            value = counted_evaluate(obj, candidate, state.budget);
        } catch (const BudgetExceeded&) {
            state.budget_terminated = true;
            return false;
        }
        accept_and_update(state, i, candidate, value, params);
    }
    ++state.iteration;

    // Rank the swarm; the best only moves on a strict improvement.
    for (const Bat& bat : state.bats) {
        if (bat.value < state.best_value) {
            state.best_value = bat.value;
            state.best_position = bat.position;
        }
    }
    return true;
}

BatRun run_bat(const BatParams& params, const Objective& obj, const RunOptions& options) {
    params.validate();
    detail::check_stop_at(obj, options.stop_at);

    BatState state = init_bats(params, obj, RandomStream(options.seed),
                               EvalBudget(options.max_evaluations));
    RunOutcome outcome;
    outcome.stop_reason = StopReason::MaxIterations;

    for (;;) {
        if (detail::target_reached(obj, options.stop_at, state.best_value)) {
            outcome.stop_reason = StopReason::TargetReached;
            outcome.evaluations_to_target = state.budget.used();
            break;
        }
        if (state.iteration >= params.max_iterations) {
            outcome.stop_reason = StopReason::MaxIterations;
            break;
        }
        if (state.budget.remaining() < params.n) {
            outcome.stop_reason = StopReason::BudgetExhausted;
            break;
        }
        bat_step(state, params, obj);
        if (options.recorder) {
            TrajectoryRecord record{state.iteration, {}, state.best_value, state.best_position};
            record.positions.reserve(state.bats.size());
            for (const Bat& bat : state.bats) record.positions.push_back(bat.position);
            options.recorder(record);
        }
    }

    outcome.best_position = state.best_position;
    outcome.best_value = state.best_value;
    outcome.evaluations = state.budget.used();
    outcome.iterations = state.iteration;
    return BatRun{std::move(state), std::move(outcome)};
}

}  // namespace batopt
