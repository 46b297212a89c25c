#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace batopt {

/// Raised when a caller breaks a documented precondition (dimension mismatch,
/// invalid parameter ranges, empty inputs).
class ContractViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised by counted_evaluate when the evaluation budget is spent. Algorithms
/// catch it and end the trial.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded() : std::runtime_error("evaluation budget exhausted") {}
};

/// A location in a d-dimensional search space.
class Point {
public:
    Point() = default;
    explicit Point(std::size_t dim, double fill = 0.0) : coords_(dim, fill) {}
    explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {}
    Point(std::initializer_list<double> coords) : coords_(coords) {}

    [[nodiscard]] std::size_t dim() const noexcept { return coords_.size(); }
    [[nodiscard]] double operator[](std::size_t k) const { return coords_[k]; }
    [[nodiscard]] double& operator[](std::size_t k) { return coords_[k]; }

    [[nodiscard]] std::span<const double> coords() const noexcept { return coords_; }
    [[nodiscard]] std::span<double> coords() noexcept { return coords_; }

    [[nodiscard]] bool all_finite() const noexcept;

    friend bool operator==(const Point&, const Point&) = default;

private:
    std::vector<double> coords_;
};

[[nodiscard]] double euclidean_distance(const Point& a, const Point& b);

/// Axis-aligned box [lower, upper]. Construction validates lower[k] < upper[k].
class Bounds {
public:
    Bounds(std::vector<double> lower, std::vector<double> upper);

    /// The same interval on every coordinate.
    static Bounds uniform(std::size_t dim, double lower, double upper);

    [[nodiscard]] std::size_t dim() const noexcept { return lower_.size(); }
    [[nodiscard]] double lower(std::size_t k) const { return lower_[k]; }
    [[nodiscard]] double upper(std::size_t k) const { return upper_[k]; }
    [[nodiscard]] double width(std::size_t k) const { return upper_[k] - lower_[k]; }
    [[nodiscard]] bool contains(const Point& x) const;

    friend bool operator==(const Bounds&, const Bounds&) = default;

private:
    std::vector<double> lower_;
    std::vector<double> upper_;
};

using ObjectiveFn = std::function<double(std::span<const double>)>;

/// A named, deterministic objective over a box with optional known optimum.
struct Objective {
    std::string name;
    std::size_t dim = 0;
    Bounds bounds;
    ObjectiveFn fn;
    std::optional<double> known_min;
    std::optional<Point> known_argmin;

    [[nodiscard]] double operator()(const Point& x) const;
};

/// Deterministic 64-bit random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Unit draws are built from the top 53 bits so that the mapping to
/// doubles does not depend on the standard library's distribution classes
/// (those are implementation-defined).
class RandomStream {
public:
    static constexpr const char* kAlgorithm = "mt19937_64/53-bit-unit";

    explicit RandomStream(std::uint64_t seed);

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64();
    /// Uniform on [0, 1).
    double uniform();
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi);
    /// Uniform on [-1, 1).
    double symmetric();
    /// Standard normal via Box-Muller; consumes two unit draws per call.
    double normal();
    /// Uniform index in [0, n).
    std::size_t index(std::size_t n);

    friend bool operator==(const RandomStream&, const RandomStream&) = default;

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// Seed for an independent sub-stream (SplitMix64 finalizer over the inputs).
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                        std::uint64_t index);

/// Counts objective calls against a hard cap.
class EvalBudget {
public:
    explicit EvalBudget(std::uint64_t max_evaluations);

    [[nodiscard]] std::uint64_t max_evaluations() const noexcept { return max_; }
    [[nodiscard]] std::uint64_t used() const noexcept { return used_; }
    [[nodiscard]] std::uint64_t remaining() const noexcept { return max_ - used_; }
    [[nodiscard]] bool exhausted() const noexcept { return used_ >= max_; }

    /// Records one evaluation; throws BudgetExceeded (leaving used unchanged) when full.
    void consume();

private:
    std::uint64_t max_;
    std::uint64_t used_ = 0;
};

/// Coordinate-wise projection onto the box.
[[nodiscard]] Point clamp_to_bounds(const Point& x, const Bounds& b);
void clamp_in_place(Point& x, const Bounds& b);

/// One unit draw per coordinate, mapped affinely onto [lower, upper).
[[nodiscard]] Point uniform_sample(const Bounds& b, RandomStream& rng);

/// Evaluates obj at x and charges one evaluation to the budget.
double counted_evaluate(const Objective& obj, const Point& x, EvalBudget& budget);

}  // namespace batopt
