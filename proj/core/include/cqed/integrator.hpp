// integrator.hpp — Adaptive Dormand-Prince 5(4) integrator with dense output,
// for linear ODEs on complex state vectors. The state is treated as a flat
// complex vector; no structure (Hermiticity, trace) is assumed.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <limits>
#include <span>

namespace cqed::num {

using Vector = Eigen::VectorXcd;

struct IntegratorOptions {
    double rtol = 1e-8;
    double atol = 1e-10;
    // Explicit RK is only conditionally stable: once transients die out the
    // error estimate no longer limits the step, so a cap at the stability
    // boundary is required. The Liouvillian drivers set this from a spectral
    // radius estimate.
    double max_step = std::numeric_limits<double>::infinity();
    std::size_t max_steps = 100'000'000;
};

struct IntegratorStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
};

// Derivative evaluation: dydt = f(y). Time-independent (linear autonomous) systems only.
using Derivative = std::function<void(const Vector& y, Vector& dydt)>;

// Observer called once per grid point, in order, with the interpolated state.
using GridObserver = std::function<void(std::size_t index, const Vector& y)>;

// Integrates y' = f(y) from t_grid.front() to t_grid.back(), invoking the
// observer at every grid time (dense output; grid times need not be step
// boundaries). The grid must be strictly increasing. Throws StiffnessError
// if the step size underflows.
IntegratorStats integrate_adaptive(const Derivative& f, const Vector& y0,
                                   std::span<const double> t_grid,
                                   const GridObserver& observe,
                                   const IntegratorOptions& opts = {});

}  // namespace cqed::num
