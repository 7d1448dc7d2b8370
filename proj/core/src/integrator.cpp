#include "cqed/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cqed/errors.hpp"

namespace cqed::num {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - bhat (embedded 4th-order error weights).
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output weights (Hairer, Norsett, Wanner; 4th-order continuous extension).
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

double error_norm(const Vector& err, const Vector& y0, const Vector& y1, double atol,
                  double rtol) {
    const auto n = err.size();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double sc = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double q = std::abs(err[i]) / sc;
        acc += q * q;
    }
    return std::sqrt(acc / static_cast<double>(n));
}

}  // namespace

IntegratorStats integrate_adaptive(const Derivative& f, const Vector& y0,
                                   std::span<const double> t_grid,
                                   const GridObserver& observe,
                                   const IntegratorOptions& opts) {
    if (t_grid.empty()) throw std::invalid_argument("integrate_adaptive: empty time grid");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1]))
            throw std::invalid_argument("integrate_adaptive: grid must be strictly increasing");

    IntegratorStats stats;
    const double t_begin = t_grid.front();
    const double t_end = t_grid.back();
    std::size_t next_out = 0;

    Vector y = y0;
    if (observe) observe(next_out, y);
    ++next_out;
    if (next_out == t_grid.size()) return stats;

    const auto n = y0.size();
    Vector k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n), yerr(n), yout(n);
    f(y, k1);

    // Initial step heuristic: limit both the first derivative scale and the
    // shortest output interval.
    const double span = t_end - t_begin;
    double h;
    {
        const double d0 = std::sqrt(y.squaredNorm() / static_cast<double>(n));
        const double d1n = std::sqrt(k1.squaredNorm() / static_cast<double>(n));
        h = (d1n > 1e-300) ? 0.01 * (d0 + opts.atol) / d1n : 1e-3 * span;
        h = std::min({h, span, 1e-2 * span, opts.max_step});
        h = std::max(h, 1e-10 * span);
    }

    double t = t_begin;
    const double h_floor = 16.0 * std::numeric_limits<double>::epsilon();
    bool previous_rejected = false;

    while (t < t_end) {
        if (stats.accepted + stats.rejected > opts.max_steps)
            throw SolverError("integrate_adaptive: step budget exhausted at t = " + std::to_string(t));
        if (h < h_floor * std::max(std::abs(t), span))
            throw StiffnessError(t, "integrate_adaptive: step size underflow at t = " +
                                        std::to_string(t) + " (stiff system?)");
        if (t + h > t_end) h = t_end - t;

        ytmp = y + h * (a21 * k1);
        f(ytmp, k2);
        ytmp = y + h * (a31 * k1 + a32 * k2);
        f(ytmp, k3);
        ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        f(ytmp, k4);
        ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        f(ytmp, k5);
        ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        f(ytmp, k6);
        ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        f(ynew, k7);  // FSAL
        yerr = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        const double err = error_norm(yerr, y, ynew, opts.atol, opts.rtol);
        if (err <= 1.0) {
            // Emit any grid points inside (t, t+h] through the dense interpolant.
            while (next_out < t_grid.size() && t_grid[next_out] <= t + h + h_floor) {
                const double theta = std::clamp((t_grid[next_out] - t) / h, 0.0, 1.0);
                const double theta1 = 1.0 - theta;
                // rcont coefficients of the quartic interpolant.
                yout = ynew - y;                                   // rcont2
                Vector r3 = h * k1 - yout;                         // rcont3
                Vector r4 = yout - h * k7 - r3;                    // rcont4
                Vector r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
                yout = y + theta * (yout + theta1 * (r3 + theta * (r4 + theta1 * r5)));
                if (observe) observe(next_out, yout);
                ++next_out;
            }
            t += h;
            y.swap(ynew);
            k1.swap(k7);
            ++stats.accepted;
            const double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
            h *= std::clamp(fac, 0.2, previous_rejected ? 1.0 : 10.0);
            h = std::min(h, opts.max_step);
            previous_rejected = false;
        } else {
            ++stats.rejected;
            const double fac = 0.9 * std::pow(err, -0.2);
            h *= std::clamp(fac, 0.1, 1.0);
            previous_rejected = true;
        }
    }
    // Floating-point tail: any grid point not yet emitted coincides with t_end.
    while (next_out < t_grid.size()) {
        if (observe) observe(next_out, y);
        ++next_out;
    }
    return stats;
}

}  // namespace cqed::num
