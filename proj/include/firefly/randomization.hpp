#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace firefly {

/// Deterministic random stream. Copying an Rng snapshots its full state,
/// including the cached second normal deviate, so a copy replays exactly.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    /// U[0, 1)
    double uniform01() { return unit_(engine_); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit_(engine_); }

    /// N(0, 1)
    double normal() { return normal_(engine_); }

    std::uint64_t next_u64() { return engine_(); }

    friend bool operator==(const Rng&, const Rng&) = default;

private:
    std::mt19937_64 engine_;
    std::uniform_real_distribution<double> unit_{0.0, 1.0};
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Mixes a seed into a statistically independent one (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// ---------------------------------------------------------------------------
// Step generators

std::vector<double> gaussian_step(Rng& rng, std::size_t n);

/// U(0,1) - 0.5 per coordinate.
std::vector<double> uniform_centered_step(Rng& rng, std::size_t n);

/// Heavy-tailed steps via Mantegna's construction. `lambda` is the tail
/// exponent of the step-length law (P(|s| > x) ~ x^(1 - lambda)), valid in
/// (1, 3); internally the Mantegna stability index is lambda - 1.
std::vector<double> levy_step(Rng& rng, std::size_t n, double lambda = 1.5);

/// Mantegna scale sigma_u for stability index `beta` in (0, 2).
double mantegna_sigma(double beta);

// ---------------------------------------------------------------------------
// Chaotic maps and schedules

enum class ChaoticMap { logistic };

/// x -> 4 x (1 - x)
double logistic_next(double x);

double chaotic_next(ChaoticMap map, double x);

/// True if `x0` is a fixed point or lands on one within two iterates.
bool is_degenerate_seed(ChaoticMap map, double x0);

struct ChaoticStream {
    ChaoticMap map = ChaoticMap::logistic;
    double x = 0.7;
};

/// Advances the stream one iterate and maps it into [lo, hi].
std::pair<double, ChaoticStream> chaotic_param_stream(ChaoticStream stream, double lo, double hi);

enum class ScheduleKind { constant, geometric, chaotic };

struct ScheduleDescriptor {
    ScheduleKind kind = ScheduleKind::geometric;
    double alpha0 = 0.2;
    double ratio = 0.97;  // geometric only
    ChaoticMap map = ChaoticMap::logistic;
    double x0 = 0.7;  // chaotic only

    static ScheduleDescriptor constant(double alpha0) { return {ScheduleKind::constant, alpha0}; }
    static ScheduleDescriptor geometric(double alpha0, double ratio) {
        return {ScheduleKind::geometric, alpha0, ratio};
    }
    static ScheduleDescriptor chaotic(double alpha0, double x0, ChaoticMap map = ChaoticMap::logistic) {
        return {ScheduleKind::chaotic, alpha0, 0.97, map, x0};
    }
};

/// Throws std::invalid_argument if the descriptor violates its invariants.
void validate(const ScheduleDescriptor& schedule);

/// alpha for generation t: constant -> alpha0, geometric -> alpha0 * ratio^t,
/// chaotic -> alpha0 * x_t where x_0 = x0 and x_{k+1} = map(x_k).
double alpha_at(const ScheduleDescriptor& schedule, std::uint64_t t);

}  // namespace firefly
