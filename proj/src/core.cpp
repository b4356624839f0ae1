#include "firefly/core.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <string>

#include "firefly/variants.hpp"

namespace firefly {

void validate(const FaParams& params) {
    auto fail = [](const std::string& what) { throw std::invalid_argument("FaParams." + what); };
    if (!(params.beta0 >= 0.0) || !std::isfinite(params.beta0)) fail("beta0 must be finite and >= 0");
    if (!(params.gamma >= 0.0) || std::isnan(params.gamma)) fail("gamma must be >= 0");
    if (params.pop_size < 2) fail("pop_size must be >= 2");
    if (params.max_fes < params.pop_size) fail("max_fes must be >= pop_size");
    if (params.epsilon_kind == EpsilonKind::levy && !(params.levy_lambda > 1.0 && params.levy_lambda < 3.0))
        fail("levy_lambda must lie in (1, 3)");
    try {
        validate(params.alpha_schedule);
    } catch (const std::invalid_argument& e) {
        fail(std::string("alpha_schedule: ") + e.what());
    }
}

double intensity_at(double i0, double gamma, double r) {
    if (r < 0.0) throw std::domain_error("intensity_at: negative distance");
    if (gamma < 0.0) throw std::domain_error("intensity_at: negative gamma");
    return i0 * std::exp(-gamma * r * r);
}

double attractiveness(double beta0, double gamma, double r) {
    if (r < 0.0) throw std::domain_error("attractiveness: negative distance");
    if (gamma < 0.0) throw std::domain_error("attractiveness: negative gamma");
    return beta0 * std::exp(-gamma * r * r);
}

namespace {

void require_same_length(std::size_t a, std::size_t b) {
    if (a != b)
        throw std::invalid_argument("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

std::string format_position(std::span<const double> x) {
    std::ostringstream out;
    out.precision(17);
    out << '(';
    for (std::size_t k = 0; k < x.size(); ++k) out << (k ? ", " : "") << x[k];
    out << ')';
    return out.str();
}

void mark_moved(Firefly& f) {
    f.fitness = unset_fitness;
    f.intensity = unset_fitness;
}

}  // namespace

double distance(std::span<const double> si, std::span<const double> sj) {
    require_same_length(si.size(), sj.size());
    double sum = 0.0;
    for (std::size_t k = 0; k < si.size(); ++k) {
        const double d = si[k] - sj[k];
        sum += d * d;
    }
    return std::sqrt(sum);
}

double normalized_distance(std::span<const double> si, std::span<const double> sj,
                           std::span<const double> width) {
    require_same_length(si.size(), sj.size());
    require_same_length(si.size(), width.size());
    double sum = 0.0;
    for (std::size_t k = 0; k < si.size(); ++k) {
        const double d = (si[k] - sj[k]) / width[k];
        sum += d * d;
    }
    return std::sqrt(sum);
}

double fitness_to_intensity(double fitness) { return -fitness; }

std::vector<double> draw_epsilon(const FaParams& params, Rng& rng, std::size_t n) {
    switch (params.epsilon_kind) {
        case EpsilonKind::gaussian: return gaussian_step(rng, n);
        case EpsilonKind::uniform_centered: return uniform_centered_step(rng, n);
        case EpsilonKind::levy: return levy_step(rng, n, params.levy_lambda);
    }
    throw std::invalid_argument("unknown epsilon kind");
}

Position move_firefly(std::span<const double> si, std::span<const double> sj, const FaParams& params,
                      double alpha, std::span<const double> domain_width, Rng& rng) {
    require_same_length(si.size(), sj.size());
    require_same_length(si.size(), domain_width.size());
    const double r = normalized_distance(si, sj, domain_width);
    const double beta = attractiveness(params.beta0, params.gamma, r);
    const auto eps = draw_epsilon(params, rng, si.size());
    Position out(si.size());
    for (std::size_t k = 0; k < si.size(); ++k)
        out[k] = si[k] + beta * (sj[k] - si[k]) + alpha * (eps[k] * domain_width[k]);
    return out;
}

Position random_walk(std::span<const double> si, const FaParams& params, double alpha,
                     std::span<const double> domain_width, Rng& rng) {
    require_same_length(si.size(), domain_width.size());
    const auto eps = draw_epsilon(params, rng, si.size());
    Position out(si.size());
    for (std::size_t k = 0; k < si.size(); ++k) out[k] = si[k] + alpha * (eps[k] * domain_width[k]);
    return out;
}

void clamp_to_bounds(Position& x, const Objective& objective) {
    require_same_length(x.size(), objective.dim());
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = std::clamp(x[k], objective.lower()[k], objective.upper()[k]);
}

SwarmState initialize(const Objective& objective, const FaParams& params, std::uint64_t seed) {
    validate(params);
    SwarmState state;
    state.seed = seed;
    state.rng = Rng(seed);
    state.fireflies.resize(params.pop_size);
    for (auto& f : state.fireflies) {
        f.position.resize(objective.dim());
        for (std::size_t k = 0; k < objective.dim(); ++k)
            f.position[k] = state.rng.uniform(objective.lower()[k], objective.upper()[k]);
    }
    state.alpha = params.alpha0();
    return state;
}

void evaluate(SwarmState& state, const Objective& objective, const FaParams& params) {
    for (auto& f : state.fireflies) {
        if (state.fes_used >= params.max_fes) {
            state.complete = true;
            break;
        }
        require_same_length(f.position.size(), objective.dim());
        const double value = objective(f.position);
        ++state.fes_used;
        if (std::isnan(value))
            throw EvaluationError(objective.name() + " returned NaN at " + format_position(f.position));
        f.fitness = value;
        f.intensity = fitness_to_intensity(value);
        if (!state.best.evaluated() || f.fitness < state.best.fitness) state.best = f;
    }
    if (state.fes_used >= params.max_fes) state.complete = true;
}

void order(SwarmState& state) {
    for (const auto& f : state.fireflies)
        if (!f.evaluated()) throw std::logic_error("order: population contains unevaluated fireflies");
    std::stable_sort(state.fireflies.begin(), state.fireflies.end(),
                     [](const Firefly& a, const Firefly& b) { return a.fitness < b.fitness; });
}

Firefly find_best(SwarmState& state) {
    const Firefly* current = nullptr;
    for (const auto& f : state.fireflies)
        if (f.evaluated() && (!current || f.fitness < current->fitness)) current = &f;
    if (!current) throw std::logic_error("find_best: no evaluated firefly in population");
    if (!state.best.evaluated() || current->fitness < state.best.fitness) state.best = *current;
    return *current;
}

namespace {

void pairwise_sweep(SwarmState& state, const Objective& objective, const FaParams& params) {
    auto& flies = state.fireflies;
    const auto& width = objective.width();
    const bool synchronous = params.update_scheme == UpdateScheme::synchronous;
    std::vector<Position> snapshot;
    if (synchronous) {
        snapshot.reserve(flies.size());
        for (const auto& f : flies) snapshot.push_back(f.position);
    }
    // Intensities are those of the evaluation pass; positions move in place.
    std::vector<double> intensity(flies.size());
    for (std::size_t i = 0; i < flies.size(); ++i) intensity[i] = flies[i].intensity;

    for (std::size_t i = 0; i < flies.size(); ++i) {
        bool attracted = false;
        for (std::size_t j = 0; j < flies.size(); ++j) {
            if (!(intensity[j] > intensity[i])) continue;
            const Position& target = synchronous ? snapshot[j] : flies[j].position;
            flies[i].position = move_firefly(flies[i].position, target, params, state.alpha, width, state.rng);
            clamp_to_bounds(flies[i].position, objective);
            attracted = true;
        }
        if (attracted) {
            mark_moved(flies[i]);
        } else if (!params.elitism) {
            flies[i].position = random_walk(flies[i].position, params, state.alpha, width, state.rng);
            clamp_to_bounds(flies[i].position, objective);
            mark_moved(flies[i]);
        }
    }
}

}  // namespace

void step(SwarmState& state, const Objective& objective, const FaParams& params) {
    if (state.complete || state.fes_used >= params.max_fes) {
        state.complete = true;
        return;
    }
    state.alpha = alpha_at(params.alpha_schedule, state.t);
    evaluate(state, objective, params);
    const bool all_evaluated =
        std::all_of(state.fireflies.begin(), state.fireflies.end(), [](const Firefly& f) { return f.evaluated(); });
    if (all_evaluated) {
        order(state);
        find_best(state);
    }
    if (!state.complete) {
        if (params.elitism && params.elitist_trials > 0) {
            elitist_best_move(state, params.elitist_trials, params, objective);
        }
    }
    if (!state.complete) {
        switch (params.move_rule) {
            case MoveRule::pairwise: pairwise_sweep(state, objective, params); break;
            case MoveRule::global_best_pull: global_best_pull_step(state, objective, params); break;
        }
    }
    ++state.t;
}

RunReport run(const Objective& objective, const FaParams& params, std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    SwarmState state = initialize(objective, params, seed);
    RunReport report;
    report.seed = seed;
    while (!state.complete) {
        const std::uint64_t generation = state.t;
        step(state, objective, params);
        report.trace.push_back({generation, state.fes_used, state.best.fitness});
    }
    report.final_best = state.best;
    report.fes_total = state.fes_used;
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace firefly
