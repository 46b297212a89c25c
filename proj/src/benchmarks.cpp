#include "batopt/benchmarks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <utility>

namespace batopt {

namespace functions {

using std::numbers::pi;

double rosenbrock_paper(std::span<const double> x) {
    // (1 - x_i^2)^2, not the classical (1 - x_i)^2.
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double sq = x[i] * x[i];
        const double a = 1.0 - sq;
        const double b = x[i + 1] - sq;
        sum += a * a + 100.0 * b * b;
    }
    return sum;
}

double rosenbrock_classic(std::span<const double> x) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = 1.0 - x[i];
        const double b = x[i + 1] - x[i] * x[i];
        sum += a * a + 100.0 * b * b;
    }
    return sum;
}

double eggcrate(std::span<const double> x) {
    const double sx = std::sin(x[0]);
    const double sy = std::sin(x[1]);
    return x[0] * x[0] + x[1] * x[1] + 25.0 * (sx * sx + sy * sy);
}

double sphere(std::span<const double> x) {
    double sum = 0.0;
    for (double v : x) sum += v * v;
    return sum;
}

double ackley(std::span<const double> x) {
    const auto d = static_cast<double>(x.size());
    double sq = 0.0;
    double cs = 0.0;
    for (double v : x) {
        sq += v * v;
        cs += std::cos(2.0 * pi * v);
    }
    return 20.0 + std::numbers::e - 20.0 * std::exp(-0.2 * std::sqrt(sq / d)) - std::exp(cs / d);
}

double michalewicz(std::span<const double> x, int m) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double inner = std::sin(static_cast<double>(i + 1) * x[i] * x[i] / pi);
        sum += std::sin(x[i]) * std::pow(inner, 2 * m);
    }
    return -sum;
}

double rastrigin(std::span<const double> x) {
    double sum = 10.0 * static_cast<double>(x.size());
    for (double v : x) sum += v * v - 10.0 * std::cos(2.0 * pi * v);
    return sum;
}

double griewank(std::span<const double> x) {
    double sum = 0.0;
    double prod = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += x[i] * x[i];
        prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return 1.0 + sum / 4000.0 - prod;
}

double easom(std::span<const double> x) {
    const double dx = x[0] - pi;
    const double dy = x[1] - pi;
    return -std::cos(x[0]) * std::cos(x[1]) * std::exp(-(dx * dx + dy * dy));
}

double schwefel(std::span<const double> x) {
    constexpr double kPerCoordinate = 418.982887272433706274786435196;
    double sum = 0.0;
    for (double v : x) sum += v * std::sin(std::sqrt(std::abs(v)));
    return kPerCoordinate * static_cast<double>(x.size()) - sum;
}

double shubert(std::span<const double> x) {
    double prod = 1.0;
    for (std::size_t k = 0; k < 2; ++k) {
        double s = 0.0;
        for (int i = 1; i <= 5; ++i) s += i * std::cos((i + 1) * x[k] + i);
        prod *= s;
    }
    return prod;
}

double multiple_peaks(std::span<const double> x) {
    // Four Gaussian peaks, negated so the tallest peaks become minima.
    const double px = x[0];
    const double py = x[1];
    const auto bump = [&](double cx, double cy) {
        return std::exp(-(px - cx) * (px - cx) - (py - cy) * (py - cy));
    };
    return -(bump(4.0, 4.0) + bump(-4.0, 4.0) + 2.0 * (bump(0.0, 0.0) + bump(0.0, -4.0)));
}

}  // namespace functions

std::string_view to_string(Citation c) {
    switch (c) {
        case Citation::PaperEquation: return "paper-eq";
        case Citation::StandardLiterature: return "standard-literature";
    }
    return "?";
}

namespace {

struct Entry {
    BenchmarkInfo info;
    double lower;
    double upper;
    double (*fn)(std::span<const double>);
};

double michalewicz10(std::span<const double> x) { return functions::michalewicz(x, 10); }

const std::vector<Entry>& entries() {
    using C = Citation;
    constexpr double pi = std::numbers::pi;
    static const std::vector<Entry> table = {
        {{"rosenbrock_paper", std::nullopt, 16, C::PaperEquation,
          "sum (1-x_i^2)^2 + 100(x_{i+1}-x_i^2)^2, minima 0 at x_i=+-1 chains"},
         -2.048, 2.048, functions::rosenbrock_paper},
        {{"rosenbrock_classic", std::nullopt, 16, C::StandardLiterature,
          "sum (1-x_i)^2 + 100(x_{i+1}-x_i^2)^2, minimum 0 at (1,...,1)"},
         -2.048, 2.048, functions::rosenbrock_classic},
        {{"eggcrate", 2, 2, C::PaperEquation, "x^2+y^2+25(sin^2 x+sin^2 y), minimum 0 at origin"},
         -2.0 * pi, 2.0 * pi, functions::eggcrate},
        {{"dejong_sphere", std::nullopt, 256, C::PaperEquation, "sum x_i^2, minimum 0 at origin"},
         -10.0, 10.0, functions::sphere},
        {{"ackley", std::nullopt, 128, C::PaperEquation, "Ackley, minimum 0 at origin"},
         -30.0, 30.0, functions::ackley},
        {{"michalewicz", std::nullopt, 16, C::PaperEquation,
          "Michalewicz m=10 on [0,pi]^d; known minimum recorded for d=2 and d=5"},
         0.0, pi, michalewicz10},
        {{"rastrigin", std::nullopt, 2, C::StandardLiterature,
          "10d + sum x_i^2 - 10cos(2 pi x_i), minimum 0 at origin"},
         -5.12, 5.12, functions::rastrigin},
        {{"griewank", std::nullopt, 2, C::StandardLiterature,
          "1 + sum x_i^2/4000 - prod cos(x_i/sqrt(i)), minimum 0 at origin"},
         -600.0, 600.0, functions::griewank},
        {{"easom", 2, 2, C::StandardLiterature, "-cos x cos y exp(-(x-pi)^2-(y-pi)^2), minimum -1"},
         -100.0, 100.0, functions::easom},
        {{"schwefel", std::nullopt, 128, C::StandardLiterature,
          "418.9829d - sum x_i sin(sqrt|x_i|), minimum 0 at x_i=420.9687"},
         -500.0, 500.0, functions::schwefel},
        {{"shubert", 2, 2, C::StandardLiterature,
          "prod_k sum_i i cos((i+1)x_k+i), 18 global minima of -186.7309"},
         -10.0, 10.0, functions::shubert},
        {{"multiple_peaks", 2, 2, C::StandardLiterature,
          "negated four-peak Gaussian mixture, minima near (0,0) and (0,-4)"},
         -5.0, 5.0, functions::multiple_peaks},
    };
    return table;
}

const std::array<std::pair<std::string_view, std::string_view>, 3> kAliases = {{
    {"sphere", "dejong_sphere"},
    {"dejong", "dejong_sphere"},
    {"rosenbrock", "rosenbrock_paper"},
}};

const Entry& find_entry(std::string_view name) {
    for (const auto& [alias, target] : kAliases) {
        if (alias == name) {
            name = target;
            break;
        }
    }
    const auto& table = entries();
    const auto it = std::find_if(table.begin(), table.end(),
                                 [&](const Entry& e) { return e.info.name == name; });
    if (it == table.end()) throw UnknownBenchmark(name);
    return *it;
}

void attach_known_optimum(Objective& obj, std::string_view name) {
    const std::size_t d = obj.dim;
    const auto constant = [&](double coord, double value) {
        obj.known_argmin = Point(d, coord);
        obj.known_min = value;
    };
    if (name == "rosenbrock_paper" || name == "rosenbrock_classic") {
        constant(1.0, 0.0);
    } else if (name == "eggcrate" || name == "dejong_sphere" || name == "ackley" ||
               name == "rastrigin" || name == "griewank") {
        constant(0.0, 0.0);
    } else if (name == "easom") {
        constant(std::numbers::pi, -1.0);
    } else if (name == "schwefel") {
        constant(420.968746359982027311844365019, 0.0);
    } else if (name == "shubert") {
        // One of 18 symmetric global minimizers.
        obj.known_argmin = Point{-7.083506407309416, 4.858056878837127};
        obj.known_min = -186.73090883102392;
    } else if (name == "multiple_peaks") {
        // The peak at (0,-4) is lower only in the 15th decimal place.
        obj.known_argmin = Point{-9.459265758292535e-09, -4.511913574822246e-07};
        obj.known_min = -2.00000022507078;
    } else if (name == "michalewicz") {
        if (d == 2) {
            obj.known_argmin = Point{2.2029055173080243, std::numbers::pi / 2.0};
            obj.known_min = -1.8013034100985532;
        } else if (d == 5) {
            obj.known_argmin = Point{2.202905517464696, 1.5707963305046575, 1.2849915685703142,
                                     1.923058469814382, 1.7204697732773235};
            obj.known_min = -4.687658179088149;
        }
    }
}

}  // namespace

const std::vector<BenchmarkInfo>& benchmark_registry() {
    static const std::vector<BenchmarkInfo> infos = [] {
        std::vector<BenchmarkInfo> out;
        for (const auto& e : entries()) out.push_back(e.info);
        return out;
    }();
    return infos;
}

const BenchmarkInfo& find_benchmark(std::string_view name) { return find_entry(name).info; }

BenchmarkSpec benchmark_spec(std::string_view name, std::size_t dim) {
    const Entry& e = find_entry(name);
    if (dim == 0) throw ContractViolation("benchmark '" + e.info.name + "': dimension must be >= 1");
    if (e.info.fixed_dim && *e.info.fixed_dim != dim) {
        throw ContractViolation("benchmark '" + e.info.name + "' is defined only for d=" +
                                std::to_string(*e.info.fixed_dim) + ", got d=" +
                                std::to_string(dim));
    }
    Objective obj{e.info.name, dim, Bounds::uniform(dim, e.lower, e.upper), e.fn,
                  std::nullopt, std::nullopt};
    attach_known_optimum(obj, e.info.name);
    return BenchmarkSpec{e.info.name, std::move(obj), e.info.default_dim, e.info.citation};
}

BenchmarkSpec benchmark_spec(std::string_view name) {
    return benchmark_spec(name, find_entry(name).info.default_dim);
}

double evaluate_benchmark(std::string_view name, const Point& x) {
    const BenchmarkSpec spec = benchmark_spec(name, x.dim());
    if (!spec.objective.bounds.contains(x)) {
        throw ContractViolation("evaluate_benchmark: point outside the domain of '" + spec.name +
                                "'");
    }
    return spec.objective(x);
}

}  // namespace batopt
