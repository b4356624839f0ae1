#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "firefly/objective.hpp"
#include "firefly/randomization.hpp"

namespace firefly {

/// Registry identifiers, in listing order.
const std::vector<std::string>& benchmark_names();

/// Builds a registry objective. Throws std::invalid_argument for an unknown
/// name, a zero dimension, or four_peaks with dim != 2.
///
///   sphere      sum x^2                                   [-5.12, 5.12]^n
///   rastrigin   10n + sum(x^2 - 10 cos 2 pi x)            [-5.12, 5.12]^n
///   ackley      -20 exp(-0.2 sqrt(mean x^2))
///               - exp(mean cos 2 pi x) + 20 + e           [-32.768, 32.768]^n
///   rosenbrock  sum 100 (x_{k+1} - x_k^2)^2 + (1 - x_k)^2  [-5, 10]^n
///   griewank    1 + sum x^2 / 4000 - prod cos(x_k / sqrt k) [-600, 600]^n
///   four_peaks  two global minima (0,0), (0,-4) and two
///               shallower ones near (4,4), (-4,4)         [-5, 5]^2
///   moving_peaks  five cones that shift every 5000
///                 evaluations (see MovingPeaks)           [0, 100]^n
Objective lookup(std::string_view name, std::size_t dim);

double four_peaks(double x, double y);

/// Locations of the four_peaks basins: the two global ones first.
const std::vector<Position>& four_peaks_minima();

// ---------------------------------------------------------------------------
// Moving peaks

inline constexpr std::uint64_t never_shift = std::numeric_limits<std::uint64_t>::max();

struct MovingPeaksConfig {
    Position lower;
    Position upper;
    std::vector<double> heights;
    std::vector<double> widths;
    std::vector<Position> centers;
    /// Evaluations between consecutive shifts.
    std::uint64_t shift_interval = never_shift;
    double shift_length = 1.0;
};

/// Cones with heights in [30, 70] and widths in [1, 12], centers uniform in
/// [0, 100]^dim.
MovingPeaksConfig random_moving_peaks(std::size_t peak_count, std::size_t dim, std::uint64_t seed,
                                      std::uint64_t shift_interval, double shift_length = 1.0);

/// f(x) = -max_k [h_k - w_k |x - c_k|]. Every `shift_interval` evaluations
/// each center moves by `shift_length` in a random direction, reflected at
/// the bounds. The evaluation counter makes this object stateful.
class MovingPeaks : public Dynamics {
public:
    MovingPeaks(MovingPeaksConfig config, std::uint64_t seed);

    double evaluate(std::span<const double> x);
    /// Evaluates without advancing the counter or triggering a shift.
    double peek(std::span<const double> x) const;

    std::uint64_t change_count() const override { return shifts_; }
    std::uint64_t evaluations() const override { return evaluations_; }
    double current_optimum_value() const override;

    const std::vector<Position>& centers() const { return config_.centers; }
    const MovingPeaksConfig& config() const { return config_; }

private:
    void shift();

    MovingPeaksConfig config_;
    Rng rng_;
    std::uint64_t evaluations_ = 0;
    std::uint64_t shifts_ = 0;
};

/// Throws std::invalid_argument on inconsistent sizes or non-positive widths.
Objective make_moving_peaks(MovingPeaksConfig config, std::uint64_t seed);

}  // namespace firefly
