#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "batopt/core.hpp"

namespace batopt {

/// One population snapshot, taken after an iteration completes.
struct TrajectoryRecord {
    std::uint64_t iteration = 0;
    std::vector<Point> positions;
    double best_value = 0.0;
    Point best_position;
};

using TrajectorySink = std::function<void(const TrajectoryRecord&)>;

/// Termination settings shared by every algorithm.
struct RunOptions {
    std::uint64_t seed = 0;
    std::uint64_t max_evaluations = 10'000;
    /// Stop once best_value - known_min <= stop_at. Requires a known minimum.
    std::optional<double> stop_at;
    TrajectorySink recorder;
};

enum class StopReason { MaxIterations, BudgetExhausted, TargetReached };

[[nodiscard]] const char* to_string(StopReason r);

struct RunOutcome {
    Point best_position;
    double best_value = 0.0;
    /// Objective calls made, including the initial population.
    std::uint64_t evaluations = 0;
    /// Completed iterations (generations for the GA).
    std::uint64_t iterations = 0;
    StopReason stop_reason = StopReason::MaxIterations;
    /// Evaluation count at the iteration boundary where the target was first met.
    std::optional<std::uint64_t> evaluations_to_target;
};

namespace detail {

/// Shared loop guard: true when the target band around the known minimum is reached.
[[nodiscard]] bool target_reached(const Objective& obj, const std::optional<double>& stop_at,
                                  double best_value);

/// Validates that a stop_at request can be honoured for obj.
void check_stop_at(const Objective& obj, const std::optional<double>& stop_at);

}  // namespace detail

}  // namespace batopt
