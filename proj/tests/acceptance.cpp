// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "batopt/baselines.hpp"
#include "batopt/bat.hpp"
#include "batopt/benchmarks.hpp"
#include "batopt/cli.hpp"
#include "batopt/harness.hpp"
#include "oracles.hpp"

using namespace batopt;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kMasterSeed = 20100401;

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

int failures = 0;

void report(const std::string& label, double limit_seconds, const std::function<Verdict()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v.pass = false;
        v.note(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    v.require(secs < limit_seconds, "runtime " + fmt("%.1f", secs) + "s over limit " +
                                        fmt("%.0f", limit_seconds) + "s");
    if (!v.pass) ++failures;
    std::printf("%s %s (%.1fs): %s\n", v.pass ? "PASS" : "FAIL", label.c_str(), secs,
                v.detail.c_str());
    std::fflush(stdout);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

int cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    return run_cli(args, out, err);
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "batopt_acceptance";
    fs::create_directories(dir);
    return dir;
}

Verdict benchmark_oracles() {
    using std::numbers::pi;
    Verdict v;
    const double r = evaluate_benchmark("rosenbrock_paper", Point{1.0, 1.0});
    const double e = evaluate_benchmark("eggcrate", Point{0.0, 0.0});
    const double s = evaluate_benchmark("dejong_sphere", Point(256, 0.0));
    const double a = evaluate_benchmark("ackley", Point(128, 0.0));
    v.require(std::abs(r) <= 1e-9, "rosenbrock(1,1)=" + fmt("%g", r));
    v.require(std::abs(e) <= 1e-9, "eggcrate(0,0)=" + fmt("%g", e));
    v.require(std::abs(s) <= 1e-9, "sphere(0)=" + fmt("%g", s));
    v.require(std::abs(a) <= 1e-9, "ackley(0)=" + fmt("%g", a));

    const auto m2 = oracle::grid_refine_2d(
        [](double x, double y) { return evaluate_benchmark("michalewicz", Point{x, y}); }, 0.0, pi,
        0.0, pi);
    v.require(std::abs(m2.value - (-1.801)) <= 2e-3, "michalewicz d=2 min " + fmt("%.6f", m2.value));

    // The sum is separable, so coordinate-wise 1-D sweeps reach the global minimum.
    Point x(5, 1.0);
    double m5 = 0.0;
    for (int sweep = 0; sweep < 2; ++sweep) {
        for (std::size_t k = 0; k < 5; ++k) {
            const auto ref = oracle::grid_refine_1d(
                [&](double t) {
                    Point y = x;
                    y[k] = t;
                    return evaluate_benchmark("michalewicz", y);
                },
                0.0, pi);
            x[k] = ref.x[0];
            m5 = ref.value;
        }
    }
    v.require(std::abs(m5 - (-4.6877)) <= 2e-3, "michalewicz d=5 min " + fmt("%.6f", m5));
    v.note("michalewicz d=2 " + fmt("%.6f", m2.value) + ", d=5 " + fmt("%.6f", m5));
    return v;
}

Verdict schedules() {
    Verdict v;
    BatParams p;
    p.n = 4;
    const BenchmarkSpec spec = benchmark_spec("dejong_sphere", 2);
    BatState state = init_bats(p, spec.objective, RandomStream(kMasterSeed), EvalBudget(100));
    const double a0 = state.bats[0].initial_loudness;
    const double r0 = state.bats[0].initial_pulse_rate;

    // Forced acceptance: a zero gate draw and a strictly better value every iteration.
    std::size_t first_below = 0;
    bool loud_exact = true;
    double worst_r = 0.0;
    double worst_hist_r = 0.0;
    for (std::uint64_t k = 1; k <= 1000; ++k) {
        state.iteration = k;
        if (!accept_with_draw(state, 0, Point{0.0, 0.0}, -static_cast<double>(k), p, 0.0)) {
            v.require(false, "forced acceptance rejected at k=" + std::to_string(k));
            return v;
        }
        const Bat& b = state.bats[0];
        loud_exact = loud_exact && b.loudness == std::pow(0.9, static_cast<double>(k)) * a0;
        const double expect_r = r0 * (1.0 - std::exp(-0.9 * static_cast<double>(k)));
        worst_r = std::max(worst_r, std::abs(b.pulse_rate - expect_r));
        if (first_below == 0 && b.loudness < 1e-4 * a0) first_below = k;
    }
    // The acceptance log reproduces the pulse-rate history.
    for (std::uint64_t t : state.bats[0].acceptance_log) {
        worst_hist_r = std::max(worst_hist_r,
                                std::abs(pulse_rate_at(r0, 0.9, t) -
                                         r0 * (1.0 - std::exp(-0.9 * static_cast<double>(t)))));
    }
    const Bat& b = state.bats[0];
    v.require(loud_exact, "loudness differs from 0.9^k * A0");
    v.require(worst_r <= 1e-12, "pulse rate off by " + fmt("%g", worst_r));
    v.require(worst_hist_r <= 1e-12, "pulse-rate history off by " + fmt("%g", worst_hist_r));
    v.require(state.bats[0].acceptance_log.size() == 1000, "acceptance log length");
    v.require(first_below == 88, "A < 1e-4*A0 first at k=" + std::to_string(first_below));
    v.require(b.loudness < 1e-4 * a0, "loudness limit at t=1e3");
    v.require(std::abs(b.pulse_rate - r0) <= 1e-12, "pulse-rate limit at t=1e3");
    v.note("A<1e-4*A0 from k=" + std::to_string(first_below) + ", |r-r0| at t=1e3 " +
           fmt("%g", std::abs(b.pulse_rate - r0)));
    return v;
}

Verdict trace_and_eggcrate() {
    Verdict v;
    // Rosenbrock trace through the CLI; final-iteration best against (+-1, 1).
    const fs::path dir = scratch_dir();
    int near = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const fs::path out = dir / ("trace_" + std::to_string(seed) + ".jsonl");
        const int code = cli({"trace", "--algorithm", "bat", "--function", "rosenbrock_paper",
                              "--dim", "2", "--pop", "25", "--iters", "20", "--seed",
                              std::to_string(derive_seed(kMasterSeed, 3, seed)), "--out",
                              out.string()});
        if (code != 0) {
            v.require(false, "trace exit code " + std::to_string(code));
            return v;
        }
        std::ifstream in(out);
        std::string line, last;
        std::size_t count = 0;
        while (std::getline(in, line)) {
            last = line;
            ++count;
        }
        if (count != 20) {
            v.require(false, "trace has " + std::to_string(count) + " lines");
            return v;
        }
        const TrajectoryRecord rec = io::parse_trace_jsonl_line(last);
        const Point& x = rec.best_position;
        const double d = std::min(euclidean_distance(x, Point{1.0, 1.0}),
                                  euclidean_distance(x, Point{-1.0, 1.0}));
        if (d <= 0.5) ++near;
    }
    v.require(near >= 80, "rosenbrock within 0.5 in " + std::to_string(near) + "/100 (need 80)");

    const BenchmarkSpec egg = benchmark_spec("eggcrate", 2);
    int close = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        BatParams p;
        p.n = 40;
        RunOptions o;
        o.seed = derive_seed(kMasterSeed, 4, seed);
        o.max_evaluations = 10000;
        const BatRun run = run_bat(p, egg.objective, o);
        if (euclidean_distance(run.outcome.best_position, Point{0.0, 0.0}) <= 0.05) ++close;
    }
    v.require(close >= 90, "eggcrate within 0.05 in " + std::to_string(close) + "/100 (need 90)");
    v.note("rosenbrock " + std::to_string(near) + "/100, eggcrate " + std::to_string(close) +
           "/100");
    return v;
}

ExperimentConfig experiment(std::size_t trials) {
    ExperimentConfig c;
    c.trials = trials;
    c.master_seed = kMasterSeed;
    c.tolerance = kDefaultTolerance;
    c.max_evaluations = kDefaultMaxEvaluations;
    return c;
}

std::string describe(const AlgorithmSummary& s) {
    std::string out = std::string(to_string(s.algorithm)) + " success " +
                      fmt("%.2f", s.summary.success_rate);
    if (s.summary.mean_evals) out += " mean " + fmt("%.1f", *s.summary.mean_evals);
    else out += " mean n/a";
    return out;
}

Verdict sphere16_convergence() {
    Verdict v;
    const std::vector<Algorithm> algos{Algorithm::Bat};
    const auto res = run_experiment(algos, benchmark_spec("dejong_sphere", 16), experiment(100));
    const ExperimentSummary& s = res[0].summary;
    double median_best = 0.0;
    {
        std::vector<double> best;
        for (const auto& t : res[0].trials) best.push_back(t.best_value);
        std::sort(best.begin(), best.end());
        median_best = best[best.size() / 2];
    }
    v.require(s.success_rate >= 0.9, "success rate " + fmt("%.2f", s.success_rate) + " (need 0.90)");
    v.note("median final best " + fmt("%.3g", median_best));
    return v;
}

Verdict ordering() {
    Verdict v;
    const std::vector<Algorithm> algos{Algorithm::Bat, Algorithm::Pso, Algorithm::Ga};
    for (const char* fn : {"dejong_sphere", "ackley"}) {
        const auto res = run_experiment(algos, benchmark_spec(fn, 16), experiment(30));
        const auto& ba = res[0].summary;
        const auto& pso = res[1].summary;
        const auto& ga = res[2].summary;
        const bool ordered = ba.mean_evals && pso.mean_evals && ga.mean_evals &&
                             *ba.mean_evals < *pso.mean_evals && *pso.mean_evals < *ga.mean_evals;
        v.require(ordered, std::string(fn) + ": BA < PSO < GA does not hold");
        v.note(std::string(fn) + " [" + describe(res[0]) + ", " + describe(res[1]) + ", " +
               describe(res[2]) + "]");
    }
    return v;
}

Verdict determinism() {
    Verdict v;
    const fs::path dir = scratch_dir();
    const std::vector<std::vector<std::string>> invocations{
        {"compare", "--functions", "dejong_sphere,ackley,eggcrate", "--dim", "0", "--algorithms",
         "bat,pso,ga", "--trials", "10", "--seed", "5", "--max-evals", "3000"},
        {"run", "--algorithm", "bat", "--function", "rastrigin", "--dim", "3", "--trials", "10",
         "--seed", "6", "--format", "jsonl"},
        {"trace", "--algorithm", "bat", "--function", "rosenbrock_paper", "--dim", "2", "--pop",
         "25", "--iters", "20", "--seed", "7"},
        {"trace", "--algorithm", "ga", "--function", "eggcrate", "--iters", "5", "--seed", "8",
         "--format", "csv"},
    };
    int idx = 0;
    for (auto args : invocations) {
        std::vector<std::string> texts;
        for (const char* threads : {"1", "4"}) {
            const fs::path out = dir / ("det_" + std::to_string(idx) + "_" + threads);
            auto a = args;
            if (a[0] != "trace") a.insert(a.end(), {"--threads", threads});
            a.insert(a.end(), {"--out", out.string()});
            v.require(cli(a) == 0, args[0] + " failed");
            texts.push_back(slurp(out));
        }
        v.require(!texts[0].empty() && texts[0] == texts[1],
                  args[0] + " output differs between repeats");
        ++idx;
    }

    const std::vector<Algorithm> algos{Algorithm::Bat, Algorithm::Pso, Algorithm::Ga};
    ExperimentConfig c = experiment(24);
    c.max_evaluations = 4000;
    c.threads = 1;
    const auto seq = run_experiment(algos, benchmark_spec("griewank", 4), c);
    c.threads = 6;
    const auto par = run_experiment(algos, benchmark_spec("griewank", 4), c);
    bool same = true;
    for (std::size_t a = 0; a < algos.size(); ++a) {
        for (std::size_t k = 0; k < c.trials; ++k) same = same && same_outcome(seq[a].trials[k], par[a].trials[k]);
        same = same && seq[a].summary.mean_evals == par[a].summary.mean_evals &&
               seq[a].summary.std_evals == par[a].summary.std_evals;
    }
    v.require(same, "run_experiment depends on thread count");
    v.note(std::to_string(invocations.size()) + " CLI invocations repeated byte-identically");
    return v;
}

Verdict accounting() {
    Verdict v;
    std::size_t checked = 0;
    for (const char* fn : {"dejong_sphere", "ackley", "rastrigin", "eggcrate"}) {
        for (Algorithm a : {Algorithm::Bat, Algorithm::Pso, Algorithm::Ga}) {
            for (std::uint64_t seed = 0; seed < 10; ++seed) {
                BenchmarkSpec spec = benchmark_spec(fn, 2);
                auto counter = std::make_shared<std::uint64_t>(0);
                spec.objective = oracle::counting(spec.objective, counter);
                TrialConfig c;
                c.seed = derive_seed(kMasterSeed, 7, seed);
                c.max_evaluations = 1000 + 517 * seed;
                c.params.set_population(10 + 7 * seed);
                const std::uint64_t n = 10 + 7 * seed;
                const TrialResult r = run_trial(a, spec, c);
                const std::uint64_t expect = n + n * r.iterations;
                const bool ok = *counter == expect && r.evaluations_used == expect &&
                                *counter <= c.max_evaluations;
                if (!ok) {
                    v.require(false, std::string(to_string(a)) + " on " + fn + " seed " +
                                             std::to_string(seed) + ": counter " +
                                             std::to_string(*counter) + ", expected " +
                                             std::to_string(expect));
                    return v;
                }
                ++checked;
            }
        }
    }
    v.note(std::to_string(checked) + " trials match n + n*iterations");
    return v;
}

Verdict rosenbrock_tolerance() {
    Verdict v;
    const BenchmarkSpec spec = benchmark_spec("rosenbrock_paper", 2);
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        TrialConfig c;
        c.seed = derive_seed(kMasterSeed, 8, seed);
        c.params.set_population(25);
        c.params.bat.max_iterations = 1u << 20;
        if (run_trial(Algorithm::Bat, spec, c).success) ++hits;
    }
    v.require(hits >= 90, std::to_string(hits) + "/100 reach 1e-5 (need 90)");
    return v;
}

Verdict sphere2_tolerance() {
    Verdict v;
    const BenchmarkSpec spec = benchmark_spec("dejong_sphere", 2);
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        TrialConfig c;
        c.seed = derive_seed(kMasterSeed, 9, seed);
        const TrialResult r = run_trial(Algorithm::Bat, spec, c);
        if (r.success && r.evaluations_used < 10000) ++hits;
    }
    v.require(hits >= 90, std::to_string(hits) + "/100 succeed under 10000 evaluations (need 90)");
    return v;
}

}  // namespace

int main() {
    report("C1 benchmark oracles", 10, benchmark_oracles);
    report("C2 loudness and pulse-rate schedules", 10, schedules);
    report("C3 rosenbrock trace and eggcrate convergence", 60, trace_and_eggcrate);
    report("C4 bat on sphere d=16 reaches 1e-5 in >= 90% of trials", 120, sphere16_convergence);
    report("C5 mean evaluations BA < PSO < GA on sphere and ackley d=16", 300, ordering);
    report("C6 determinism", 120, determinism);
    report("C7 evaluation accounting", 60, accounting);
    report("supplementary: bat on rosenbrock d=2, n=25, >= 90/100 to 1e-5", 60,
           rosenbrock_tolerance);
    report("supplementary: bat on sphere d=2 >= 90/100 to 1e-5", 60, sphere2_tolerance);
    std::printf("%d failed\n", failures);
    return failures == 0 ? 0 : 1;
}
