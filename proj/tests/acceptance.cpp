// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "firefly/benchmarks.hpp"
#include "firefly/harness.hpp"
#include "oracles.hpp"
#include "replay.hpp"

using namespace firefly;
namespace fs = std::filesystem;

namespace {

constexpr std::size_t seeds = 30;

// Pinned thresholds.
constexpr double identity_tol = 1e-12;
constexpr double oracle_tol = 1e-12;
constexpr std::size_t oracle_generations = 100;
constexpr std::size_t subdivision_floor = 15;
constexpr double subdivision_radius = 0.5;
constexpr std::size_t sphere_floor = 24;
constexpr double sphere_target = 1e-2;
constexpr std::size_t recovery_floor = 20;
constexpr std::uint64_t recovery_window = 3'000;
constexpr std::size_t penalty_floor = 24;
constexpr double penalty_radius = 1e-1;

struct Verdict {
    bool pass = true;
    std::string detail;
};

struct Tally {
    bool pass = true;
    std::vector<std::string> failures;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (failures.size() < 5) failures.push_back(what);
        }
    }
    std::string summary(const std::string& ok) const {
        if (pass) return ok;
        std::string out;
        for (const auto& f : failures) out += (out.empty() ? "" : "; ") + f;
        return out;
    }
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

// ---------------------------------------------------------------------------

Verdict equation_suite() {
    Tally t;
    t.require(intensity_at(5, 1, 0) == 5, "intensity_at(5,1,0)");
    t.require(intensity_at(1, 0, 7) == 1, "intensity_at(1,0,7)");
    t.require(std::abs(intensity_at(1, 1, 1) - std::exp(-1.0)) <= identity_tol, "intensity_at(1,1,1)");
    t.require(attractiveness(1, 3, 0) == 1, "attractiveness(1,3,0)");
    t.require(attractiveness(0, 1, 2) == 0, "attractiveness(0,1,2)");
    t.require(std::abs(attractiveness(2, 0.5, 2) - 2.0 * std::exp(-2.0)) <= identity_tol, "attractiveness(2,.5,2)");
    t.require(distance(Position{1, 2, 3}, Position{1, 2, 3}) == 0, "distance identical");
    t.require(std::abs(distance(Position{0, 0}, Position{3, 4}) - 5.0) <= identity_tol, "distance 3-4-5");

    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(0.0, 4.0);
    for (int k = 0; k < 1000; ++k) {
        const double gamma = u(gen), r1 = u(gen), r2 = r1 + 1e-3 + u(gen), beta0 = 0.05 + u(gen), i0 = 0.05 + u(gen);
        t.require(std::abs(attractiveness(beta0, gamma, r1) / beta0 - intensity_at(i0, gamma, r1) / i0) <= identity_tol,
                  "proportionality");
        t.require(gamma == 0.0 || attractiveness(beta0, gamma, r1) > attractiveness(beta0, gamma, r2),
                  "monotone absorption");
        t.require(attractiveness(beta0, 0.0, r1) == attractiveness(beta0, 0.0, r2), "gamma = 0 constancy");
        const Position a{u(gen), u(gen)}, b{u(gen), u(gen)};
        t.require(distance(a, b) == distance(b, a), "distance symmetry");
    }

    Rng rng(2);
    for (int k = 0; k < 200; ++k) {
        const Position si{u(gen) - 2, u(gen) - 2, u(gen) - 2}, sj{u(gen) - 2, u(gen) - 2, u(gen) - 2};
        const Position width{4, 4, 4};
        FaParams p;
        p.beta0 = 0.0;
        t.require(move_firefly(si, sj, p, 0.0, width, rng) == si, "beta0 = alpha = 0 leaves si");
        p.beta0 = 1.0;
        p.gamma = 0.0;
        const auto landed = move_firefly(si, sj, p, 0.0, width, rng);
        for (std::size_t d = 0; d < 3; ++d) t.require(std::abs(landed[d] - sj[d]) <= identity_tol, "full attraction landing");
    }
    {
        FaParams p;
        p.gamma = 1e6;
        const auto moved = move_firefly(Position{0, 0}, Position{0.6, 0.8}, p, 0.0, Position{1, 1}, rng);
        t.require(std::abs(moved[0]) <= 1e-6 && std::abs(moved[1]) <= 1e-6, "gamma -> infinity");
    }
    return {t.pass, t.summary("all examples and identities hold")};
}

Verdict reduction_oracles() {
    Tally t;
    const auto objective = lookup("rastrigin", 4);
    FaParams base;
    base.pop_size = 15;
    base.max_fes = base.pop_size * (oracle_generations + 1);
    double de_gap = 0.0, pso_gap = 0.0;
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        const auto de = replay::run(replay::Oracle::de, objective, reduction_mode(ReductionMode::de_like, base, seed),
                                    seed, oracle_generations);
        t.require(de.generations == oracle_generations && de.streams_aligned, "de_like stream drift");
        de_gap = std::max(de_gap, de.max_gap);

        auto pso_base = base;
        pso_base.beta0 = 0.3 + 0.2 * static_cast<double>(seed - 11);
        const auto pso = replay::run(replay::Oracle::pso, objective,
                                     reduction_mode(ReductionMode::pso_like, pso_base, seed), seed, oracle_generations);
        t.require(pso.generations == oracle_generations && pso.streams_aligned, "pso_like stream drift");
        pso_gap = std::max(pso_gap, pso.max_gap);

        const auto sa = replay::run(replay::Oracle::sa, objective, reduction_mode(ReductionMode::sa_like, base, seed),
                                    seed, oracle_generations);
        t.require(sa.generations == oracle_generations && sa.streams_aligned && sa.exact, "sa_like replay not exact");
    }
    t.require(de_gap < oracle_tol, fmt("de_like max gap %.3g", de_gap));
    t.require(pso_gap < oracle_tol, fmt("pso_like max gap %.3g", pso_gap));
    return {t.pass, t.summary(fmt("max |delta| de %.3g, pso %.3g; sa exact", de_gap, pso_gap))};
}

std::size_t subdivided_runs(double gamma, std::size_t* histogram) {
    const auto objective = lookup("four_peaks", 2);
    FaParams p;
    p.pop_size = 40;
    p.gamma = gamma;
    p.max_fes = 20'000;
    std::size_t hits = 0;
    for (std::uint64_t seed = 0; seed < seeds; ++seed) {
        SwarmState state = initialize(objective, p, seed);
        while (!state.complete) step(state, objective, p);
        std::vector<oracle::Vec> points;
        for (const auto& f : state.fireflies) points.push_back(f.position);
        const auto covered = oracle::covered_minima(points, four_peaks_minima(), subdivision_radius);
        if (histogram) ++histogram[covered];
        hits += covered >= 2 ? 1 : 0;
    }
    return hits;
}

Verdict subdivision() {
    std::size_t histogram[5] = {0, 0, 0, 0, 0};
    const std::size_t hits = subdivided_runs(1.0, histogram);
    // Reference point only: gamma = 100 on the normalized scale is gamma = 1 in
    // four_peaks' own units (width 10). It does not affect the verdict.
    const std::size_t reference = subdivided_runs(100.0, nullptr);
    const std::string detail = std::to_string(hits) + "/30 runs cover >= 2 minima (need " +
                               std::to_string(subdivision_floor) + "); covered-minima histogram 0:" +
                               std::to_string(histogram[0]) + " 1:" + std::to_string(histogram[1]) +
                               " 2:" + std::to_string(histogram[2]) + " 3:" + std::to_string(histogram[3]) +
                               " 4:" + std::to_string(histogram[4]) +
                               "; for reference gamma 100 gives " + std::to_string(reference) + "/30";
    return {hits >= subdivision_floor, detail};
}

Verdict sphere_convergence() {
    const auto objective = lookup("sphere", 5);
    const FaParams p;
    std::size_t hits = 0;
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < seeds; ++seed) {
        const auto report = run(objective, p, seed);
        worst = std::max(worst, report.final_best.fitness);
        hits += report.final_best.fitness < sphere_target ? 1 : 0;
    }
    return {hits >= sphere_floor, std::to_string(hits) + "/30 below 1e-2 (need " + std::to_string(sphere_floor) +
                                      "); worst final " + fmt("%.3g", worst)};
}

Verdict elitist_monotonicity() {
    Tally t;
    std::size_t curves = 0;
    const std::vector<std::pair<std::string, std::size_t>> matrix{
        {"sphere", 5}, {"rastrigin", 5}, {"ackley", 5}, {"rosenbrock", 4}, {"griewank", 5}, {"four_peaks", 2},
        {"moving_peaks", 3}};
    for (const auto& [benchmark, dim] : matrix) {
        for (auto variant : all_variants()) {
            ExperimentConfig config;
            config.benchmark = benchmark;
            config.dim = dim;
            config.variant = variant;
            config.repetitions = 3;
            config.base_seed = 100;
            config.params.pop_size = 20;
            config.params.max_fes = 4'000;
            config.params.elitism = true;
            config.params.elitist_trials = 3;
            config.multiswarm.num_swarms = 2;
            const auto result = run_experiment(config);
            for (const auto& report : result.reports) {
                std::istringstream in(curve_csv(report));
                std::string line;
                std::getline(in, line);
                double previous = INFINITY;
                while (std::getline(in, line)) {
                    const double value = std::stod(line.substr(line.rfind(',') + 1));
                    t.require(value <= previous, benchmark + "/" + std::string(to_string(variant)) + " rises at " + line);
                    previous = value;
                }
                ++curves;
            }
        }
    }
    return {t.pass, t.summary(std::to_string(curves) + " curves, all monotone non-increasing")};
}

Verdict dynamic_response() {
    constexpr std::size_t dim = 5;
    constexpr std::uint64_t interval = 5'000;
    MultiSwarmConfig config;  // 5 swarms x 10 fireflies, 3 sentinels
    FaParams p;
    p.pop_size = config.num_swarms * config.swarm_size;
    p.max_fes = 20'000;

    std::size_t recovered_seeds = 0, missed_detections = 0, false_alarms = 0, shifts_total = 0;
    for (std::uint64_t seed = 0; seed < seeds; ++seed) {
        const auto objective = make_moving_peaks(random_moving_peaks(5, dim, 1'000 + seed, interval), 2'000 + seed);
        const auto& dynamics = *objective.dynamics();
        auto multi = init_multiswarm(objective, config, p, seed);

        struct Episode {
            double pre_best;
            std::uint64_t detected_at;
            bool recovered = false;
        };
        std::vector<Episode> episodes;
        std::uint64_t shifts_in_previous_step = 0;
        double best_before_step = INFINITY;
        while (!multi.complete) {
            const std::uint64_t shifts_before = dynamics.change_count();
            best_before_step = multi.best.evaluated() ? multi.best.fitness : best_before_step;
            multiswarm_step(multi, config, objective, p);
            const std::uint64_t shifts_now = dynamics.change_count() - shifts_before;
            if (multi.change_detected) {
                if (shifts_now + shifts_in_previous_step == 0) ++false_alarms;
                episodes.push_back({best_before_step, multi.fes_used()});
            } else if (shifts_in_previous_step > 0) {
                // A shift inside the previous step must be caught by this step's sentinel pass.
                if (multi.fes_used() < p.max_fes) ++missed_detections;
            }
            shifts_in_previous_step = multi.change_detected ? 0 : shifts_now;
            if (!episodes.empty()) {
                auto& e = episodes.back();
                // pre_best < 0: recovering to within a factor 2 means reaching at least half its depth.
                if (multi.best.evaluated() && multi.fes_used() <= e.detected_at + recovery_window &&
                    multi.best.fitness <= 0.5 * e.pre_best)
                    e.recovered = true;
            }
        }
        shifts_total += dynamics.change_count();
        bool all_recovered = !episodes.empty();
        for (const auto& e : episodes) {
            // An episode cut short by the budget before its window ends is not held against the run.
            const bool window_complete = e.detected_at + recovery_window <= multi.fes_used();
            all_recovered = all_recovered && (e.recovered || !window_complete);
        }
        recovered_seeds += all_recovered ? 1 : 0;
    }
    const bool pass = missed_detections == 0 && false_alarms == 0 && recovered_seeds >= recovery_floor;
    return {pass, std::to_string(shifts_total) + " shifts, " + std::to_string(missed_detections) + " missed, " +
                      std::to_string(false_alarms) + " false alarms; recovery in " + std::to_string(recovered_seeds) +
                      "/30 seeds (need " + std::to_string(recovery_floor) + ")"};
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::vector<std::pair<std::string, std::string>> snapshot(const fs::path& dir) {
    std::vector<std::pair<std::string, std::string>> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir))
        if (entry.is_regular_file()) files.emplace_back(fs::relative(entry.path(), dir).generic_string(), read_file(entry.path()));
    std::sort(files.begin(), files.end());
    return files;
}

Verdict determinism() {
    Tally t;
    const fs::path root = fs::temp_directory_path() / "firefly_acceptance_determinism";
    const std::vector<std::string> documents{
        R"({"benchmark": "rastrigin", "dim": 5, "variant": "base", "repetitions": 6, "base_seed": 3, "max_fes": 6000})",
        R"({"benchmark": "ackley", "dim": 3, "variant": "levy", "repetitions": 5, "base_seed": 9, "max_fes": 5000})",
        R"({"benchmark": "moving_peaks", "dim": 2, "variant": "multiswarm", "repetitions": 4, "base_seed": 1,
            "pop_size": 30, "num_swarms": 3, "max_fes": 12000})",
        R"({"benchmark": "griewank", "dim": 4, "variant": "de_like", "repetitions": 4, "base_seed": 0,
            "max_fes": 4000, "update_scheme": "synchronous"})"};
    std::size_t compared = 0;
    for (std::size_t d = 0; d < documents.size(); ++d) {
        std::vector<std::vector<std::pair<std::string, std::string>>> runs;
        for (int mode = 0; mode < 3; ++mode) {
            auto config = parse_config(documents[d]);
            // Every run writes under the same relative name so summary echoes match.
            const fs::path dir = root / std::to_string(mode);
            fs::remove_all(dir);
            fs::create_directories(dir);
            const auto cwd = fs::current_path();
            fs::current_path(dir);
            config.output_dir = "out";
            const auto result = run_experiment(config, mode == 2 ? Execution::concurrent : Execution::sequential, 4);
            emit_results(result.stats, result.reports, config);
            fs::current_path(cwd);
            runs.push_back(snapshot(dir / "out"));
        }
        t.require(!runs[0].empty() && runs[0] == runs[1], "config " + std::to_string(d) + ": repeat differs");
        t.require(runs[0] == runs[2], "config " + std::to_string(d) + ": concurrent differs");
        compared += runs[0].size();
    }
    fs::remove_all(root);
    return {t.pass, t.summary(std::to_string(compared) + " files byte-identical across sequential x2 and concurrent")};
}

Verdict penalty_correctness() {
    PenaltySpec spec;
    spec.weight = 1e3;
    spec.constraints = {[](std::span<const double> x) { return 1.0 - x[0]; }};
    const auto objective = penalty_wrap(lookup("sphere", 2), spec);
    FaParams p;
    p.max_fes = 20'000;
    std::size_t hits = 0;
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < seeds; ++seed) {
        const auto report = run(objective, p, seed);
        const auto& x = report.final_best.position;
        const double gap = std::hypot(x[0] - 1.0, x[1]);
        worst = std::max(worst, gap);
        hits += gap <= penalty_radius ? 1 : 0;
    }
    return {hits >= penalty_floor, std::to_string(hits) + "/30 within 0.1 of (1, 0) (need " +
                                       std::to_string(penalty_floor) + "); worst distance " + fmt("%.3g", worst)};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_seconds;
        std::function<Verdict()> check;
    };
    const std::vector<Criterion> criteria{
        {1, "equation suite", 1.0, equation_suite},
        {2, "reduction oracles", 10.0, reduction_oracles},
        {3, "multi-modal subdivision", 60.0, subdivision},
        {4, "sphere convergence", 120.0, sphere_convergence},
        {5, "elitist monotonicity", 60.0, elitist_monotonicity},
        {6, "dynamic response", 120.0, dynamic_response},
        {7, "end-to-end determinism", 60.0, determinism},
        {8, "penalty correctness", 60.0, penalty_correctness},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = seconds < c.budget_seconds;
        const bool pass = v.pass && in_time;
        failures += pass ? 0 : 1;
        std::printf("%s criterion %d (%s): %s [%.2f s of %.0f s]%s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                    v.detail.c_str(), seconds, c.budget_seconds, in_time ? "" : " over time budget");
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
