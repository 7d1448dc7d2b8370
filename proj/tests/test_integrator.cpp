#include <doctest.h>

#include <cmath>

#include "cqed/errors.hpp"
#include "cqed/integrator.hpp"

using namespace cqed::num;

TEST_CASE("dense output reproduces exponential decay") {
    const auto f = [](const Vector& y, Vector& dydt) { dydt = -y; };
    Vector y0(1);
    y0[0] = 1.0;
    std::vector<double> grid;
    for (int k = 0; k <= 100; ++k) grid.push_back(0.05 * k);

    double worst = 0.0;
    integrate_adaptive(f, y0, grid, [&](std::size_t k, const Vector& y) {
        worst = std::max(worst, std::abs(y[0] - std::exp(-grid[k])));
    });
    CHECK(worst < 1e-8);
}

TEST_CASE("oscillatory complex dynamics") {
    const std::complex<double> lambda(0.0, 7.0);
    const auto f = [&](const Vector& y, Vector& dydt) { dydt = lambda * y; };
    Vector y0(1);
    y0[0] = 1.0;
    std::vector<double> grid;
    for (int k = 0; k <= 64; ++k) grid.push_back(0.125 * k);

    double worst = 0.0;
    integrate_adaptive(f, y0, grid, [&](std::size_t k, const Vector& y) {
        worst = std::max(worst, std::abs(y[0] - std::exp(lambda * grid[k])));
    });
    CHECK(worst < 1e-6);
}

TEST_CASE("step underflow reports the failing time") {
    const auto f = [](const Vector& y, Vector& dydt) { dydt = -1e18 * y; };
    Vector y0(1);
    y0[0] = 1.0;
    const std::vector<double> grid = {0.0, 1.0};
    CHECK_THROWS_AS(integrate_adaptive(f, y0, grid, {}), cqed::StiffnessError);
    try {
        integrate_adaptive(f, y0, grid, {});
    } catch (const cqed::StiffnessError& e) {
        CHECK(e.failing_time < 1e-6);
    }
}

TEST_CASE("grid validation") {
    const auto f = [](const Vector& y, Vector& dydt) { dydt = -y; };
    Vector y0(1);
    y0[0] = 1.0;
    CHECK_THROWS_AS(integrate_adaptive(f, y0, std::vector<double>{}, {}), std::invalid_argument);
    CHECK_THROWS_AS(integrate_adaptive(f, y0, std::vector<double>{0.0, 0.0}, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(integrate_adaptive(f, y0, std::vector<double>{0.0, 1.0, 0.5}, {}),
                    std::invalid_argument);
}
