#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "firefly/objective.hpp"
#include "firefly/randomization.hpp"

namespace firefly {

enum class EpsilonKind { gaussian, uniform_centered, levy };
enum class UpdateScheme { asynchronous, synchronous };
enum class MoveRule { pairwise, global_best_pull };

/// Control parameters of a run. The randomization scale alpha lives in
/// `alpha_schedule.alpha0`; the per-generation value comes from alpha_at().
/// gamma is interpreted against coordinates normalized to [0, 1] per
/// dimension, so the usual [0.1, 10] guidance carries across problems.
struct FaParams {
    double beta0 = 1.0;
    double gamma = 1.0;
    std::size_t pop_size = 25;
    std::uint64_t max_fes = 50'000;
    EpsilonKind epsilon_kind = EpsilonKind::gaussian;
    double levy_lambda = 1.5;
    UpdateScheme update_scheme = UpdateScheme::asynchronous;
    ScheduleDescriptor alpha_schedule{};
    bool elitism = false;
    /// Trial directions probed by the brightest firefly each generation
    /// when elitism is on. Zero keeps the brightest in place.
    std::size_t elitist_trials = 0;
    MoveRule move_rule = MoveRule::pairwise;

    double alpha0() const { return alpha_schedule.alpha0; }
};

/// Throws std::invalid_argument naming the offending field.
void validate(const FaParams& params);

inline constexpr double unset_fitness = std::numeric_limits<double>::quiet_NaN();

struct Firefly {
    Position position;
    double fitness = unset_fitness;
    double intensity = unset_fitness;

    bool evaluated() const { return !std::isnan(fitness); }
};

struct SwarmState {
    std::vector<Firefly> fireflies;
    std::uint64_t t = 0;
    std::uint64_t fes_used = 0;
    /// Best-so-far; unevaluated until the first evaluation.
    Firefly best;
    Rng rng;
    std::uint64_t seed = 0;
    /// alpha in effect for the current generation.
    double alpha = 0.0;
    /// Set once the evaluation budget is exhausted.
    bool complete = false;
};

struct TracePoint {
    std::uint64_t generation = 0;
    std::uint64_t fes_used = 0;
    double best_fitness = 0.0;

    friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct RunReport {
    std::vector<TracePoint> trace;
    Firefly final_best;
    std::uint64_t fes_total = 0;
    std::uint64_t seed = 0;
    double wall_seconds = 0.0;
};

/// Raised when the objective yields NaN; the message names the position.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Light and attraction

/// i0 * exp(-gamma r^2)
double intensity_at(double i0, double gamma, double r);

/// beta0 * exp(-gamma r^2)
double attractiveness(double beta0, double gamma, double r);

/// Euclidean distance; throws std::invalid_argument on length mismatch.
double distance(std::span<const double> si, std::span<const double> sj);

/// Distance after dividing each coordinate difference by `width`.
double normalized_distance(std::span<const double> si, std::span<const double> sj,
                           std::span<const double> width);

/// Minimization convention: brighter means lower fitness.
double fitness_to_intensity(double fitness);

// ---------------------------------------------------------------------------
// Movement

/// Draws one epsilon vector of the kind selected in `params`.
std::vector<double> draw_epsilon(const FaParams& params, Rng& rng, std::size_t n);

/// si + beta0 exp(-gamma r^2) (sj - si) + alpha (epsilon * width), with r
/// measured in normalized coordinates. The caller clamps to bounds.
Position move_firefly(std::span<const double> si, std::span<const double> sj, const FaParams& params,
                      double alpha, std::span<const double> domain_width, Rng& rng);

/// si + alpha (epsilon * width).
Position random_walk(std::span<const double> si, const FaParams& params, double alpha,
                     std::span<const double> domain_width, Rng& rng);

void clamp_to_bounds(Position& x, const Objective& objective);

// ---------------------------------------------------------------------------
// Algorithm loop

SwarmState initialize(const Objective& objective, const FaParams& params, std::uint64_t seed);

/// Evaluates every firefly, or as many as the budget allows; marks the
/// state complete once the budget is spent. Updates best-so-far.
void evaluate(SwarmState& state, const Objective& objective, const FaParams& params);

/// Stable ascending sort by fitness. Throws std::logic_error if any
/// firefly is unevaluated.
void order(SwarmState& state);

/// Returns the current generation's best and folds it into best-so-far.
Firefly find_best(SwarmState& state);

/// One generation: alpha update, evaluate, order, find best, move.
void step(SwarmState& state, const Objective& objective, const FaParams& params);

RunReport run(const Objective& objective, const FaParams& params, std::uint64_t seed);

}  // namespace firefly
