#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "firefly/core.hpp"

namespace firefly {

// ---------------------------------------------------------------------------
// Elitist and global-best movement

/// Probes `m` random unit directions from the brightest firefly (index 0 of
/// an ordered state), each displaced by alpha * domain width, and moves it
/// to the best strictly improving trial. Consumes one evaluation per trial,
/// stopping early if the budget runs out. Uses `state.alpha`.
void elitist_best_move(SwarmState& state, std::size_t m, const FaParams& params, const Objective& objective);

/// Every firefly moves toward the best-so-far g*:
///   s_i + beta0 exp(-gamma r^2) (g* - s_i) + alpha (N(0,1) * width).
/// With elitism the brightest firefly holds its position.
void global_best_pull_step(SwarmState& state, const Objective& objective, const FaParams& params);

// ---------------------------------------------------------------------------
// Reductions to SA / DE / PSO

enum class ReductionMode { sa_like, de_like, pso_like };

/// Presets on top of `base`: sa_like zeroes beta0; de_like sets gamma = 0
/// and draws beta0 once from U(0,1) using `seed`; pso_like sets gamma = 0
/// and switches to the global-best pull.
FaParams reduction_mode(ReductionMode mode, FaParams base = {}, std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Multi-swarm scheme for dynamic objectives

struct MultiSwarmConfig {
    std::size_t num_swarms = 5;
    std::size_t swarm_size = 10;
    /// Normalized distance under which two swarm bests collide.
    double exclusion_radius = 0.1;
    /// Normalized population diameter under which a swarm counts as converged.
    double anticonvergence_radius = 0.05;
    std::size_t sentinel_count = 3;
};

void validate(const MultiSwarmConfig& config, std::size_t dim);

struct MultiSwarm {
    std::vector<SwarmState> swarms;
    /// Fixed probe points re-evaluated every step to detect environment changes.
    std::vector<Firefly> sentinels;
    /// Best across swarms since the last detected change.
    Firefly best;
    std::uint64_t generation = 0;
    std::uint64_t sentinel_fes = 0;
    std::uint64_t changes_detected = 0;
    bool change_detected = false;  // during the last step
    std::vector<std::size_t> rerandomized;  // during the last step
    bool complete = false;
    Rng rng;

    std::uint64_t fes_used() const;
};

/// `seeds` holds one seed per swarm followed by one for the sentinels;
/// duplicates are rejected so that streams never overlap.
MultiSwarm init_multiswarm(const Objective& objective, const MultiSwarmConfig& config, const FaParams& params,
                           std::span<const std::uint64_t> seeds);

/// Derives distinct per-swarm seeds from `seed`.
MultiSwarm init_multiswarm(const Objective& objective, const MultiSwarmConfig& config, const FaParams& params,
                           std::uint64_t seed);

/// Sentinel check (with full invalidation and alpha restart on change), one
/// core step per swarm, then exclusion and anti-convergence.
void multiswarm_step(MultiSwarm& multi, const MultiSwarmConfig& config, const Objective& objective,
                     const FaParams& params);

/// The report's trace and final_best track the best value over the whole
/// run, across environment changes.
RunReport run_multiswarm(const Objective& objective, const MultiSwarmConfig& config, const FaParams& params,
                         std::uint64_t seed);

/// Largest pairwise normalized distance within the population.
double population_diameter(const SwarmState& state, std::span<const double> width);

// ---------------------------------------------------------------------------
// Constraint handling

using Constraint = std::function<double(std::span<const double>)>;

/// Constraints follow the g(x) <= 0 convention.
struct PenaltySpec {
    std::vector<Constraint> constraints;
    double weight = 1e3;
    double exponent = 2.0;
};

/// weight * sum_k max(0, g_k(x))^exponent
double penalty(const PenaltySpec& spec, std::span<const double> x);

/// Returns an objective evaluating f(x) + penalty(x) over the same box.
Objective penalty_wrap(const Objective& objective, PenaltySpec spec);

}  // namespace firefly
