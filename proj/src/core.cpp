#include "batopt/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace batopt {

bool Point::all_finite() const noexcept {
    return std::all_of(coords_.begin(), coords_.end(), [](double v) { return std::isfinite(v); });
}

double euclidean_distance(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) {
        throw ContractViolation("euclidean_distance: dimension mismatch");
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < a.dim(); ++k) {
        const double d = a[k] - b[k];
        sum += d * d;
    }
    return std::sqrt(sum);
}

Bounds::Bounds(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.empty() || lower_.size() != upper_.size()) {
        throw ContractViolation("Bounds: lower and upper must have equal dimension >= 1");
    }
    for (std::size_t k = 0; k < lower_.size(); ++k) {
        if (!(lower_[k] < upper_[k]) || !std::isfinite(lower_[k]) || !std::isfinite(upper_[k])) {
            throw ContractViolation("Bounds: require finite lower[k] < upper[k] at k=" +
                                    std::to_string(k));
        }
    }
}

Bounds Bounds::uniform(std::size_t dim, double lower, double upper) {
    return Bounds(std::vector<double>(dim, lower), std::vector<double>(dim, upper));
}

bool Bounds::contains(const Point& x) const {
    if (x.dim() != dim()) return false;
    for (std::size_t k = 0; k < dim(); ++k) {
        if (!(x[k] >= lower_[k] && x[k] <= upper_[k])) return false;
    }
    return true;
}

double Objective::operator()(const Point& x) const {
    if (x.dim() != dim) {
        throw ContractViolation("objective '" + name + "': expected dimension " +
                                std::to_string(dim) + ", got " + std::to_string(x.dim()));
    }
    return fn(x.coords());
}

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

std::uint64_t RandomStream::next_u64() { return engine_(); }

double RandomStream::uniform() {
    // 2^-53
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double RandomStream::symmetric() { return 2.0 * uniform() - 1.0; }

double RandomStream::normal() {
    // 1 - u keeps the log argument in (0, 1].
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t RandomStream::index(std::size_t n) {
    if (n == 0) throw ContractViolation("RandomStream::index: n must be positive");
    // Lemire-style rejection keeps the result unbiased.
    const std::uint64_t bound = n;
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = engine_();
        if (r >= threshold) return static_cast<std::size_t>(r % bound);
    }
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
    return splitmix64(splitmix64(splitmix64(master) ^ stream) ^ index);
}

EvalBudget::EvalBudget(std::uint64_t max_evaluations) : max_(max_evaluations) {
    if (max_evaluations == 0) {
        throw ContractViolation("EvalBudget: max_evaluations must be positive");
    }
}

void EvalBudget::consume() {
    if (used_ >= max_) throw BudgetExceeded();
    ++used_;
}

void clamp_in_place(Point& x, const Bounds& b) {
    if (x.dim() != b.dim()) {
        throw ContractViolation("clamp_to_bounds: point has dimension " + std::to_string(x.dim()) +
                                ", bounds have " + std::to_string(b.dim()));
    }
    for (std::size_t k = 0; k < x.dim(); ++k) {
        x[k] = std::clamp(x[k], b.lower(k), b.upper(k));
    }
}

Point clamp_to_bounds(const Point& x, const Bounds& b) {
    Point out = x;
    clamp_in_place(out, b);
    return out;
}

Point uniform_sample(const Bounds& b, RandomStream& rng) {
    Point x(b.dim());
    for (std::size_t k = 0; k < b.dim(); ++k) {
        const double v = b.lower(k) + b.width(k) * rng.uniform();
        // Rounding can land exactly on the upper edge for very wide boxes.
        x[k] = v < b.upper(k) ? v : std::nextafter(b.upper(k), b.lower(k));
    }
    return x;
}

double counted_evaluate(const Objective& obj, const Point& x, EvalBudget& budget) {
    if (budget.exhausted()) throw BudgetExceeded();
    const double value = obj(x);
    budget.consume();
    return value;
}

}  // namespace batopt
