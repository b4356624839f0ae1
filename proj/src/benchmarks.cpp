#include "firefly/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace firefly {

namespace {

double sphere(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

double rastrigin(std::span<const double> x) {
    double s = 10.0 * static_cast<double>(x.size());
    for (double v : x) s += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
    return s;
}

double ackley(std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    double sq = 0.0, cs = 0.0;
    for (double v : x) {
        sq += v * v;
        cs += std::cos(2.0 * std::numbers::pi * v);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 + std::numbers::e;
}

double rosenbrock(std::span<const double> x) {
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < x.size(); ++k) {
        const double a = x[k + 1] - x[k] * x[k];
        const double b = 1.0 - x[k];
        s += 100.0 * a * a + b * b;
    }
    return s;
}

double griewank(std::span<const double> x) {
    double s = 0.0, p = 1.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        s += x[k] * x[k] / 4000.0;
        p *= std::cos(x[k] / std::sqrt(static_cast<double>(k + 1)));
    }
    return 1.0 + s - p;
}

Objective make_registered(std::string name, std::size_t dim, double lo, double hi,
                          double (*f)(std::span<const double>), Position optimum_at) {
    const double value = f(optimum_at);
    return Objective(std::move(name), Position(dim, lo), Position(dim, hi), f,
                     KnownOptimum{std::move(optimum_at), value});
}

void check_known_optimum(const Objective& objective, double expected) {
    const auto& opt = objective.known_optimum();
    if (!opt || std::abs(objective(opt->position) - opt->value) > 1e-9 || std::abs(opt->value - expected) > 1e-6)
        throw std::logic_error(objective.name() + ": known optimum failed validation");
}

constexpr std::uint64_t moving_peaks_seed = 0x5EED;

}  // namespace

double four_peaks(double x, double y) {
    return -(std::exp(-(x - 4) * (x - 4) - (y - 4) * (y - 4)) + std::exp(-(x + 4) * (x + 4) - (y - 4) * (y - 4)) +
             2.0 * (std::exp(-x * x - y * y) + std::exp(-x * x - (y + 4) * (y + 4))));
}

const std::vector<Position>& four_peaks_minima() {
    static const std::vector<Position> minima{{0.0, 0.0}, {0.0, -4.0}, {4.0, 4.0}, {-4.0, 4.0}};
    return minima;
}

const std::vector<std::string>& benchmark_names() {
    static const std::vector<std::string> names{"sphere", "rosenbrock", "rastrigin", "ackley", "griewank", "four_peaks",
                                                   "moving_peaks"};
    return names;
}

Objective lookup(std::string_view name, std::size_t dim) {
    if (dim == 0) throw std::invalid_argument("benchmark dimension must be positive");
    Objective objective = [&]() -> Objective {
        if (name == "sphere") return make_registered("sphere", dim, -5.12, 5.12, sphere, Position(dim, 0.0));
        if (name == "rastrigin") return make_registered("rastrigin", dim, -5.12, 5.12, rastrigin, Position(dim, 0.0));
        if (name == "ackley") return make_registered("ackley", dim, -32.768, 32.768, ackley, Position(dim, 0.0));
        if (name == "rosenbrock") return make_registered("rosenbrock", dim, -5.0, 10.0, rosenbrock, Position(dim, 1.0));
        if (name == "griewank") return make_registered("griewank", dim, -600.0, 600.0, griewank, Position(dim, 0.0));
        if (name == "four_peaks") {
            if (dim != 2) throw std::invalid_argument("four_peaks is defined for dim = 2 only");
            auto f = [](std::span<const double> x) { return four_peaks(x[0], x[1]); };
            // The cross terms put the exact value a few 1e-7 below -2.
            return Objective("four_peaks", {-5.0, -5.0}, {5.0, 5.0}, f, KnownOptimum{{0.0, 0.0}, four_peaks(0.0, 0.0)});
        }
        if (name == "moving_peaks")
            return make_moving_peaks(random_moving_peaks(5, dim, moving_peaks_seed, 5'000), moving_peaks_seed);
        throw std::invalid_argument("unknown benchmark '" + std::string(name) + "'");
    }();
    if (name == "moving_peaks") return objective;
    check_known_optimum(objective, name == "four_peaks" ? -2.0 : 0.0);
    return objective;
}

// ---------------------------------------------------------------------------

MovingPeaksConfig random_moving_peaks(std::size_t peak_count, std::size_t dim, std::uint64_t seed,
                                      std::uint64_t shift_interval, double shift_length) {
    Rng rng(seed);
    MovingPeaksConfig config;
    config.lower.assign(dim, 0.0);
    config.upper.assign(dim, 100.0);
    for (std::size_t k = 0; k < peak_count; ++k) {
        config.heights.push_back(rng.uniform(30.0, 70.0));
        config.widths.push_back(rng.uniform(1.0, 12.0));
        Position c(dim);
        for (auto& v : c) v = rng.uniform(0.0, 100.0);
        config.centers.push_back(std::move(c));
    }
    config.shift_interval = shift_interval;
    config.shift_length = shift_length;
    return config;
}

MovingPeaks::MovingPeaks(MovingPeaksConfig config, std::uint64_t seed) : config_(std::move(config)), rng_(seed) {
    const std::size_t peaks = config_.heights.size();
    const std::size_t dim = config_.lower.size();
    if (peaks == 0) throw std::invalid_argument("moving peaks: need at least one peak");
    if (config_.widths.size() != peaks || config_.centers.size() != peaks)
        throw std::invalid_argument("moving peaks: heights, widths and centers differ in count");
    if (dim == 0 || config_.upper.size() != dim) throw std::invalid_argument("moving peaks: bad bounds");
    for (std::size_t d = 0; d < dim; ++d)
        if (!(config_.lower[d] < config_.upper[d])) throw std::invalid_argument("moving peaks: lower >= upper");
    for (double w : config_.widths)
        if (!(w > 0.0)) throw std::invalid_argument("moving peaks: widths must be positive");
    for (const auto& c : config_.centers)
        if (c.size() != dim) throw std::invalid_argument("moving peaks: center dimension mismatch");
    if (config_.shift_interval == 0) throw std::invalid_argument("moving peaks: shift_interval must be positive");
    if (!(config_.shift_length > 0.0)) throw std::invalid_argument("moving peaks: shift_length must be positive");
}

double MovingPeaks::peek(std::span<const double> x) const {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < config_.heights.size(); ++k) {
        double sq = 0.0;
        for (std::size_t d = 0; d < x.size(); ++d) {
            const double diff = x[d] - config_.centers[k][d];
            sq += diff * diff;
        }
        best = std::max(best, config_.heights[k] - config_.widths[k] * std::sqrt(sq));
    }
    return -best;
}

double MovingPeaks::evaluate(std::span<const double> x) {
    if (config_.shift_interval != never_shift && evaluations_ > 0 && evaluations_ % config_.shift_interval == 0)
        shift();
    ++evaluations_;
    return peek(x);
}

void MovingPeaks::shift() {
    const std::size_t dim = config_.lower.size();
    for (auto& c : config_.centers) {
        std::vector<double> dir;
        double norm = 0.0;
        do {
            dir = gaussian_step(rng_, dim);
            norm = 0.0;
            for (double v : dir) norm += v * v;
            norm = std::sqrt(norm);
        } while (norm == 0.0);
        for (std::size_t d = 0; d < dim; ++d) {
            double v = c[d] + config_.shift_length * dir[d] / norm;
            if (v > config_.upper[d]) v = 2.0 * config_.upper[d] - v;
            if (v < config_.lower[d]) v = 2.0 * config_.lower[d] - v;
            c[d] = std::clamp(v, config_.lower[d], config_.upper[d]);
        }
    }
    ++shifts_;
}

double MovingPeaks::current_optimum_value() const {
    return -*std::max_element(config_.heights.begin(), config_.heights.end());
}

Objective make_moving_peaks(MovingPeaksConfig config, std::uint64_t seed) {
    auto peaks = std::make_shared<MovingPeaks>(std::move(config), seed);
    const auto& cfg = peaks->config();
    const auto tallest = static_cast<std::size_t>(
        std::max_element(cfg.heights.begin(), cfg.heights.end()) - cfg.heights.begin());
    KnownOptimum initial{cfg.centers[tallest], peaks->peek(cfg.centers[tallest])};
    Position lower = cfg.lower, upper = cfg.upper;
    auto eval = [peaks](std::span<const double> x) { return peaks->evaluate(x); };
    return Objective("moving_peaks", std::move(lower), std::move(upper), std::move(eval), std::move(initial), peaks);
}

}  // namespace firefly
