#include "firefly/variants.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace firefly {

void elitist_best_move(SwarmState& state, std::size_t m, const FaParams& params, const Objective& objective) {
    if (m == 0 || state.fireflies.empty()) return;
    Firefly& brightest = state.fireflies.front();
    if (!brightest.evaluated()) throw std::logic_error("elitist_best_move: brightest firefly is unevaluated");
    const std::size_t n = objective.dim();
    const auto& width = objective.width();

    Position best_trial;
    double best_trial_fitness = brightest.fitness;
    for (std::size_t k = 0; k < m && state.fes_used < params.max_fes; ++k) {
        // Normalized Gaussian vectors are uniform on the unit sphere.
        std::vector<double> dir;
        double norm = 0.0;
        do {
            dir = gaussian_step(state.rng, n);
            norm = std::sqrt(std::inner_product(dir.begin(), dir.end(), dir.begin(), 0.0));
        } while (norm == 0.0);
        Position trial(n);
        for (std::size_t d = 0; d < n; ++d)
            trial[d] = brightest.position[d] + state.alpha * (dir[d] / norm) * width[d];
        clamp_to_bounds(trial, objective);
        const double value = objective(trial);
        ++state.fes_used;
        if (std::isnan(value)) throw EvaluationError(objective.name() + " returned NaN in elitist trial");
        // Strict comparison keeps the lowest trial index among equal improvements.
        if (value < best_trial_fitness) {
            best_trial_fitness = value;
            best_trial = std::move(trial);
        }
    }
    if (!best_trial.empty()) {
        brightest.position = std::move(best_trial);
        brightest.fitness = best_trial_fitness;
        brightest.intensity = fitness_to_intensity(best_trial_fitness);
        if (!state.best.evaluated() || brightest.fitness < state.best.fitness) state.best = brightest;
    }
    if (state.fes_used >= params.max_fes) state.complete = true;
}

void global_best_pull_step(SwarmState& state, const Objective& objective, const FaParams& params) {
    if (!state.best.evaluated()) throw std::logic_error("global_best_pull_step: no best-so-far yet");
    const Position target = state.best.position;
    const auto& width = objective.width();
    for (std::size_t i = 0; i < state.fireflies.size(); ++i) {
        Firefly& f = state.fireflies[i];
        if (params.elitism && i == 0 && f.evaluated()) continue;
        const double r = normalized_distance(f.position, target, width);
        const double beta = attractiveness(params.beta0, params.gamma, r);
        const auto eps = gaussian_step(state.rng, f.position.size());
        for (std::size_t k = 0; k < f.position.size(); ++k)
            f.position[k] = f.position[k] + beta * (target[k] - f.position[k]) + state.alpha * (eps[k] * width[k]);
        clamp_to_bounds(f.position, objective);
        f.fitness = unset_fitness;
        f.intensity = unset_fitness;
    }
}

FaParams reduction_mode(ReductionMode mode, FaParams base, std::uint64_t seed) {
    switch (mode) {
        case ReductionMode::sa_like: base.beta0 = 0.0; break;
        case ReductionMode::de_like: {
            Rng rng(derive_seed(seed, 0xDE));
            base.gamma = 0.0;
            base.beta0 = rng.uniform01();
            break;
        }
        case ReductionMode::pso_like:
            base.gamma = 0.0;
            base.move_rule = MoveRule::global_best_pull;
            break;
    }
    return base;
}

// ---------------------------------------------------------------------------

void validate(const MultiSwarmConfig& config, std::size_t dim) {
    if (config.num_swarms == 0) throw std::invalid_argument("MultiSwarmConfig.num_swarms must be positive");
    if (config.swarm_size < 2) throw std::invalid_argument("MultiSwarmConfig.swarm_size must be >= 2");
    const double half_diagonal = 0.5 * std::sqrt(static_cast<double>(dim));
    if (!(config.exclusion_radius > 0.0 && config.exclusion_radius < half_diagonal))
        throw std::invalid_argument("MultiSwarmConfig.exclusion_radius must lie in (0, half normalized diagonal)");
    if (!(config.anticonvergence_radius > 0.0))
        throw std::invalid_argument("MultiSwarmConfig.anticonvergence_radius must be positive");
}

std::uint64_t MultiSwarm::fes_used() const {
    std::uint64_t total = sentinel_fes;
    for (const auto& s : swarms) total += s.fes_used;
    return total;
}

double population_diameter(const SwarmState& state, std::span<const double> width) {
    double diameter = 0.0;
    const auto& flies = state.fireflies;
    for (std::size_t a = 0; a < flies.size(); ++a)
        for (std::size_t b = a + 1; b < flies.size(); ++b)
            diameter = std::max(diameter, normalized_distance(flies[a].position, flies[b].position, width));
    return diameter;
}

namespace {

void rerandomize(SwarmState& swarm, const Objective& objective) {
    for (auto& f : swarm.fireflies) {
        for (std::size_t k = 0; k < objective.dim(); ++k)
            f.position[k] = swarm.rng.uniform(objective.lower()[k], objective.upper()[k]);
        f.fitness = unset_fitness;
        f.intensity = unset_fitness;
    }
    swarm.best = Firefly{};
    swarm.t = 0;
}

FaParams swarm_params(const FaParams& params, const MultiSwarmConfig& config) {
    FaParams p = params;
    p.pop_size = config.swarm_size;
    return p;
}

bool better_or_unset(const Firefly& candidate, const Firefly& incumbent) {
    return candidate.evaluated() && (!incumbent.evaluated() || candidate.fitness < incumbent.fitness);
}

}  // namespace

MultiSwarm init_multiswarm(const Objective& objective, const MultiSwarmConfig& config, const FaParams& params,
                           std::span<const std::uint64_t> seeds) {
    validate(config, objective.dim());
    if (seeds.size() != config.num_swarms + 1)
        throw std::invalid_argument("init_multiswarm: expected one seed per swarm plus one for sentinels");
    if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size())
        throw std::invalid_argument("init_multiswarm: duplicate seeds would produce overlapping streams");
    const FaParams per_swarm = swarm_params(params, config);
    validate(per_swarm);

    MultiSwarm multi;
    for (std::size_t s = 0; s < config.num_swarms; ++s) multi.swarms.push_back(initialize(objective, per_swarm, seeds[s]));
    multi.rng = Rng(seeds.back());
    for (std::size_t k = 0; k < config.sentinel_count && multi.fes_used() < params.max_fes; ++k) {
        Firefly sentinel;
        sentinel.position.resize(objective.dim());
        for (std::size_t d = 0; d < objective.dim(); ++d)
            sentinel.position[d] = multi.rng.uniform(objective.lower()[d], objective.upper()[d]);
        sentinel.fitness = objective(sentinel.position);
        sentinel.intensity = fitness_to_intensity(sentinel.fitness);
        ++multi.sentinel_fes;
        multi.sentinels.push_back(std::move(sentinel));
    }
    return multi;
}

MultiSwarm init_multiswarm(const Objective& objective, const MultiSwarmConfig& config, const FaParams& params,
                           std::uint64_t seed) {
    std::vector<std::uint64_t> seeds;
    for (std::size_t s = 0; s <= config.num_swarms; ++s) seeds.push_back(derive_seed(seed, s));
    return init_multiswarm(objective, config, params, seeds);
}

void multiswarm_step(MultiSwarm& multi, const MultiSwarmConfig& config, const Objective& objective,
                     const FaParams& params) {
    multi.change_detected = false;
    multi.rerandomized.clear();
    if (multi.complete || multi.fes_used() >= params.max_fes) {
        multi.complete = true;
        return;
    }

    auto read_sentinel = [&](Firefly& sentinel) {
        const double value = objective(sentinel.position);
        ++multi.sentinel_fes;
        const bool changed = std::abs(value - sentinel.fitness) > 1e-9;
        sentinel.fitness = value;
        sentinel.intensity = fitness_to_intensity(value);
        return changed;
    };
    std::size_t first_changed = multi.sentinels.size();
    for (std::size_t k = 0; k < multi.sentinels.size(); ++k) {
        if (multi.fes_used() >= params.max_fes) break;
        if (read_sentinel(multi.sentinels[k]) && first_changed == multi.sentinels.size()) first_changed = k;
    }
    if (first_changed < multi.sentinels.size()) {
        multi.change_detected = true;
        // Sentinels read before the change would otherwise report it again next step.
        for (std::size_t k = 0; k < first_changed && multi.fes_used() < params.max_fes; ++k)
            read_sentinel(multi.sentinels[k]);
    }
    if (multi.change_detected) {
        ++multi.changes_detected;
        multi.best = Firefly{};
        for (auto& swarm : multi.swarms) {
            for (auto& f : swarm.fireflies) {
                f.fitness = unset_fitness;
                f.intensity = unset_fitness;
            }
            swarm.best = Firefly{};
            swarm.t = 0;
        }
    }

    const FaParams base = swarm_params(params, config);
    for (auto& swarm : multi.swarms) {
        const std::uint64_t used = multi.fes_used();
        if (used >= params.max_fes) break;
        FaParams p = base;
        p.max_fes = swarm.fes_used + (params.max_fes - used);
        swarm.complete = false;
        step(swarm, objective, p);
        if (better_or_unset(swarm.best, multi.best)) multi.best = swarm.best;
    }

    const auto& width = objective.width();
    std::vector<bool> reset(multi.swarms.size(), false);
    for (std::size_t a = 0; a < multi.swarms.size(); ++a) {
        for (std::size_t b = a + 1; b < multi.swarms.size(); ++b) {
            if (reset[a]) break;
            if (reset[b]) continue;
            const auto& ba = multi.swarms[a].best;
            const auto& bb = multi.swarms[b].best;
            if (!ba.evaluated() || !bb.evaluated()) continue;
            if (normalized_distance(ba.position, bb.position, width) >= config.exclusion_radius) continue;
            const std::size_t worse = bb.fitness < ba.fitness ? a : b;
            rerandomize(multi.swarms[worse], objective);
            reset[worse] = true;
            multi.rerandomized.push_back(worse);
        }
    }

    const bool all_converged = std::all_of(multi.swarms.begin(), multi.swarms.end(), [&](const SwarmState& s) {
        return population_diameter(s, width) < config.anticonvergence_radius;
    });
    if (all_converged) {
        std::size_t worst = multi.swarms.size();
        for (std::size_t s = 0; s < multi.swarms.size(); ++s) {
            if (reset[s] || !multi.swarms[s].best.evaluated()) continue;
            if (worst == multi.swarms.size() || multi.swarms[s].best.fitness > multi.swarms[worst].best.fitness)
                worst = s;
        }
        if (worst < multi.swarms.size()) {
            rerandomize(multi.swarms[worst], objective);
            multi.rerandomized.push_back(worst);
        }
    }

    ++multi.generation;
    if (multi.fes_used() >= params.max_fes) multi.complete = true;
}

RunReport run_multiswarm(const Objective& objective, const MultiSwarmConfig& config, const FaParams& params,
                         std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    MultiSwarm multi = init_multiswarm(objective, config, params, seed);
    RunReport report;
    report.seed = seed;
    // The trace follows the best value seen over the whole run; multi.best
    // forgets everything at each detected change.
    Firefly overall;
    while (!multi.complete) {
        const std::uint64_t generation = multi.generation;
        multiswarm_step(multi, config, objective, params);
        if (better_or_unset(multi.best, overall)) overall = multi.best;
        if (overall.evaluated()) report.trace.push_back({generation, multi.fes_used(), overall.fitness});
    }
    report.final_best = overall;
    report.fes_total = multi.fes_used();
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

// ---------------------------------------------------------------------------

double penalty(const PenaltySpec& spec, std::span<const double> x) {
    double total = 0.0;
    for (const auto& g : spec.constraints) {
        const double violation = g(x);
        if (violation > 0.0) total += std::pow(violation, spec.exponent);
    }
    return spec.weight * total;
}

Objective penalty_wrap(const Objective& objective, PenaltySpec spec) {
    if (!(spec.weight > 0.0)) throw std::invalid_argument("PenaltySpec.weight must be positive");
    if (!(spec.exponent >= 1.0)) throw std::invalid_argument("PenaltySpec.exponent must be >= 1");
    auto eval = [inner = objective, spec = std::move(spec)](std::span<const double> x) {
        return inner(x) + penalty(spec, x);
    };
    return Objective(objective.name() + "+penalty", objective.lower(), objective.upper(), std::move(eval),
                     std::nullopt, objective.dynamics());
}

}  // namespace firefly
