#include "batopt/run.hpp"

namespace batopt {

const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::MaxIterations: return "max_iterations";
        case StopReason::BudgetExhausted: return "budget_exhausted";
        case StopReason::TargetReached: return "target_reached";
    }
    return "?";
}

namespace detail {

bool target_reached(const Objective& obj, const std::optional<double>& stop_at,
                    double best_value) {
    if (!stop_at || !obj.known_min) return false;
    return best_value - *obj.known_min <= *stop_at;
}

void check_stop_at(const Objective& obj, const std::optional<double>& stop_at) {
    if (stop_at && !obj.known_min) {
        throw ContractViolation("objective '" + obj.name +
                                "' has no known minimum; a stop tolerance cannot be applied");
    }
    if (stop_at && !(*stop_at >= 0.0)) {
        throw ContractViolation("stop tolerance must be non-negative");
    }
}

}  // namespace detail

}  // namespace batopt
