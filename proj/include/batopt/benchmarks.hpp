#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "batopt/core.hpp"

namespace batopt {

/// Lookup of a benchmark name that is not registered.
class UnknownBenchmark : public std::out_of_range {
public:
    explicit UnknownBenchmark(std::string_view name)
        : std::out_of_range("unknown benchmark function '" + std::string(name) + "'") {}
};

/// Where a benchmark definition comes from.
enum class Citation {
    PaperEquation,        // formula printed alongside the original algorithm
    StandardLiterature,   // conventional definition of a function named there without a formula
};

[[nodiscard]] std::string_view to_string(Citation c);

struct BenchmarkSpec {
    std::string name;
    Objective objective;
    std::size_t default_dim = 2;
    Citation citation = Citation::StandardLiterature;
};

/// Static registry entry, enough to build a BenchmarkSpec for any allowed dimension.
struct BenchmarkInfo {
    std::string name;
    /// Set for functions defined only in one dimension (e.g. eggcrate is 2-D).
    std::optional<std::size_t> fixed_dim;
    std::size_t default_dim;
    Citation citation;
    std::string description;
};

/// Every registered benchmark, in a stable order.
[[nodiscard]] const std::vector<BenchmarkInfo>& benchmark_registry();

/// Canonical registry name for `name`, resolving aliases ("sphere", "dejong").
/// Throws UnknownBenchmark.
[[nodiscard]] const BenchmarkInfo& find_benchmark(std::string_view name);

/// Builds the spec for `name` at dimension `dim`.
/// Throws UnknownBenchmark or ContractViolation (unsupported dimension).
[[nodiscard]] BenchmarkSpec benchmark_spec(std::string_view name, std::size_t dim);

/// Spec at the function's default dimension.
[[nodiscard]] BenchmarkSpec benchmark_spec(std::string_view name);

/// Evaluates benchmark `name` at x. The dimension is taken from x and x must
/// lie inside the function's domain.
[[nodiscard]] double evaluate_benchmark(std::string_view name, const Point& x);

namespace functions {

// Raw formulas over an arbitrary coordinate span. Callers are responsible for
// dimension restrictions; the registry enforces them.
double rosenbrock_paper(std::span<const double> x);
double rosenbrock_classic(std::span<const double> x);
double eggcrate(std::span<const double> x);
double sphere(std::span<const double> x);
double ackley(std::span<const double> x);
double michalewicz(std::span<const double> x, int m = 10);
double rastrigin(std::span<const double> x);
double griewank(std::span<const double> x);
double easom(std::span<const double> x);
double schwefel(std::span<const double> x);
double shubert(std::span<const double> x);
double multiple_peaks(std::span<const double> x);

}  // namespace functions

}  // namespace batopt
