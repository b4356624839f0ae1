#include <cmath>
#include <numbers>

#include "doctest.h"
#include "firefly/benchmarks.hpp"
#include "oracles.hpp"

using namespace firefly;

TEST_CASE("registry known optima") {
    for (const auto& name : benchmark_names()) {
        for (std::size_t dim : {2u, 5u}) {
            if (name == "four_peaks" && dim != 2) {
                CHECK_THROWS_AS(lookup(name, dim), std::invalid_argument);
                continue;
            }
            const auto objective = lookup(name, dim);
            REQUIRE(objective.known_optimum().has_value());
            const auto& opt = *objective.known_optimum();
            CHECK(std::abs(objective(opt.position) - opt.value) <= 1e-9);
            CHECK(objective.contains(opt.position));
        }
    }
    CHECK_THROWS_AS(lookup("nope", 2), std::invalid_argument);
    CHECK_THROWS_AS(lookup("sphere", 0), std::invalid_argument);
}

TEST_CASE("analytic values") {
    CHECK(lookup("sphere", 4)(Position(4, 0.0)) == 0.0);
    CHECK(std::abs(lookup("ackley", 3)(Position(3, 0.0))) <= 1e-12);
    CHECK(lookup("rosenbrock", 3)(Position(3, 1.0)) == 0.0);
    CHECK(lookup("rastrigin", 2)(Position{1.0, 0.0}) == doctest::Approx(1.0));
    CHECK(std::abs(four_peaks(0.0, 0.0) + 2.0) <= 1e-6);
    CHECK(four_peaks(4.0, 4.0) == doctest::Approx(-1.0).epsilon(1e-6));
    // griewank at (pi * 1, 0): 1 + pi^2/4000 - cos(pi)
    CHECK(lookup("griewank", 2)(Position{std::numbers::pi, 0.0}) ==
          doctest::Approx(2.0 + std::numbers::pi * std::numbers::pi / 4000.0));
}

TEST_CASE("registry functions stay finite inside their boxes") {
    firefly::Rng rng(12);
    for (const auto& name : benchmark_names()) {
        const auto objective = lookup(name, name == "four_peaks" ? 2 : 6);
        bool finite = true;
        for (int s = 0; s < 10'000; ++s) {
            Position x(objective.dim());
            for (std::size_t k = 0; k < x.size(); ++k) x[k] = rng.uniform(objective.lower()[k], objective.upper()[k]);
            finite = finite && std::isfinite(objective(x));
        }
        CHECK_MESSAGE(finite, name);
    }
}

TEST_CASE("four_peaks has exactly two global basins") {
    std::vector<oracle::Vec> near_global;
    double lowest = 0.0;
    for (int i = 0; i <= 1000; ++i)
        for (int j = 0; j <= 1000; ++j) {
            const double x = -5.0 + 0.01 * i, y = -5.0 + 0.01 * j;
            const double v = four_peaks(x, y);
            lowest = std::min(lowest, v);
            if (v <= -2.0 + 1e-4) near_global.push_back({x, y});
        }
    CHECK(lowest >= -2.0 - 1e-6);
    const auto basins = oracle::single_linkage(near_global, 0.05);
    CHECK(basins.size() == 2);
    CHECK(oracle::covered_minima(near_global, {{0.0, 0.0}, {0.0, -4.0}}, 0.05) == 2);
}

TEST_CASE("moving peaks") {
    MovingPeaksConfig config;
    config.lower = {0.0, 0.0};
    config.upper = {10.0, 10.0};
    config.heights = {50.0, 30.0};
    config.widths = {2.0, 5.0};
    config.centers = {{2.0, 2.0}, {8.0, 8.0}};

    SUBCASE("value at the tallest center") {
        const auto objective = make_moving_peaks(config, 1);
        CHECK(objective(Position{2.0, 2.0}) == -50.0);
        CHECK(objective.dynamics()->current_optimum_value() == -50.0);
    }
    SUBCASE("never shifting means static") {
        const auto objective = make_moving_peaks(config, 1);
        const double first = objective(Position{3.0, 7.0});
        for (int k = 0; k < 10'000; ++k) CHECK(objective(Position{3.0, 7.0}) == first);
        CHECK(objective.dynamics()->change_count() == 0);
    }
    SUBCASE("each shift moves every center by the shift length") {
        config.shift_interval = 10;
        config.shift_length = 0.75;
        MovingPeaks peaks(config, 4);
        const Position x{5.0, 5.0};
        const double before = peaks.evaluate(x);
        for (int k = 1; k < 10; ++k) CHECK(peaks.evaluate(x) == before);
        const auto old_centers = peaks.centers();
        CHECK(peaks.change_count() == 0);
        peaks.evaluate(x);  // the 11th evaluation sees the shifted landscape
        CHECK(peaks.change_count() == 1);
        for (std::size_t c = 0; c < old_centers.size(); ++c) {
            const double dx = peaks.centers()[c][0] - old_centers[c][0];
            const double dy = peaks.centers()[c][1] - old_centers[c][1];
            CHECK(std::abs(std::hypot(dx, dy) - 0.75) <= 1e-9);
        }
    }
    SUBCASE("rejects inconsistent configs") {
        config.widths = {2.0};
        CHECK_THROWS_AS(make_moving_peaks(config, 1), std::invalid_argument);
        config.widths = {2.0, -1.0};
        CHECK_THROWS_AS(make_moving_peaks(config, 1), std::invalid_argument);
    }
    SUBCASE("random configuration ranges") {
        const auto random = random_moving_peaks(5, 3, 9, 5'000);
        CHECK(random.heights.size() == 5);
        for (std::size_t k = 0; k < 5; ++k) {
            CHECK(random.heights[k] >= 30.0);
            CHECK(random.heights[k] <= 70.0);
            CHECK(random.widths[k] >= 1.0);
            CHECK(random.widths[k] <= 12.0);
            for (double v : random.centers[k]) {
                CHECK(v >= 0.0);
                CHECK(v <= 100.0);
            }
        }
    }
}
