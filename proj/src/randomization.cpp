#include "firefly/randomization.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace firefly {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

void require_nonempty(std::size_t n) {
    if (n == 0) throw std::invalid_argument("step dimension must be positive");
}

}  // namespace

std::vector<double> gaussian_step(Rng& rng, std::size_t n) {
    require_nonempty(n);
    std::vector<double> out(n);
    for (auto& v : out) v = rng.normal();
    return out;
}

std::vector<double> uniform_centered_step(Rng& rng, std::size_t n) {
    require_nonempty(n);
    std::vector<double> out(n);
    for (auto& v : out) v = rng.uniform01() - 0.5;
    return out;
}

double mantegna_sigma(double beta) {
    if (!(beta > 0.0 && beta < 2.0)) throw std::invalid_argument("Mantegna index must lie in (0, 2)");
    const double num = std::tgamma(1.0 + beta) * std::sin(std::numbers::pi * beta / 2.0);
    const double den = std::tgamma((1.0 + beta) / 2.0) * beta * std::pow(2.0, (beta - 1.0) / 2.0);
    return std::pow(num / den, 1.0 / beta);
}

std::vector<double> levy_step(Rng& rng, std::size_t n, double lambda) {
    require_nonempty(n);
    if (!(lambda > 1.0 && lambda < 3.0))
        throw std::invalid_argument("levy lambda must lie in (1, 3), got " + std::to_string(lambda));
    const double beta = lambda - 1.0;
    const double sigma_u = mantegna_sigma(beta);
    std::vector<double> out(n);
    for (auto& s : out) {
        const double u = sigma_u * rng.normal();
        const double v = rng.normal();
        s = u / std::pow(std::abs(v), 1.0 / beta);
    }
    return out;
}

double logistic_next(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("logistic map input outside [0, 1]");
    // 4x(1-x) can round a hair above 1 near x = 0.5
    return std::min(1.0, 4.0 * x * (1.0 - x));
}

double chaotic_next(ChaoticMap map, double x) {
    switch (map) {
        case ChaoticMap::logistic: return logistic_next(x);
    }
    throw std::invalid_argument("unknown chaotic map");
}

bool is_degenerate_seed(ChaoticMap map, double x0) {
    switch (map) {
        case ChaoticMap::logistic:
            return x0 == 0.0 || x0 == 0.25 || x0 == 0.5 || x0 == 0.75 || x0 == 1.0;
    }
    return true;
}

std::pair<double, ChaoticStream> chaotic_param_stream(ChaoticStream stream, double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("chaotic parameter range requires lo < hi");
    stream.x = chaotic_next(stream.map, stream.x);
    return {lo + stream.x * (hi - lo), stream};
}

void validate(const ScheduleDescriptor& schedule) {
    if (!(schedule.alpha0 >= 0.0) || !std::isfinite(schedule.alpha0))
        throw std::invalid_argument("alpha0 must be finite and non-negative");
    switch (schedule.kind) {
        case ScheduleKind::constant: break;
        case ScheduleKind::geometric:
            if (!(schedule.ratio > 0.0 && schedule.ratio < 1.0))
                throw std::invalid_argument("geometric ratio must lie strictly inside (0, 1)");
            break;
        case ScheduleKind::chaotic:
            if (!(schedule.x0 > 0.0 && schedule.x0 < 1.0) || is_degenerate_seed(schedule.map, schedule.x0))
                throw std::invalid_argument("chaotic x0 must lie in (0, 1) away from the map's fixed points");
            break;
    }
}

double alpha_at(const ScheduleDescriptor& schedule, std::uint64_t t) {
    switch (schedule.kind) {
        case ScheduleKind::constant: return schedule.alpha0;
        case ScheduleKind::geometric: return schedule.alpha0 * std::pow(schedule.ratio, static_cast<double>(t));
        case ScheduleKind::chaotic: {
            double x = schedule.x0;
            for (std::uint64_t k = 0; k < t; ++k) x = chaotic_next(schedule.map, x);
            return schedule.alpha0 * x;
        }
    }
    return schedule.alpha0;
}

}  // namespace firefly
