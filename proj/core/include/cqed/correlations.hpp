// correlations.hpp — Steady-state two-time correlation functions via the
// quantum regression formulae, g2 normalization, and the classical
// (Cauchy-Schwarz) bound report.

#pragma once

#include <span>
#include <vector>

#include "cqed/lindblad.hpp"

namespace cqed::correlations {

using hilbert::Complex;
using hilbert::DensityOperator;
using hilbert::Operator;
using lindblad::Liouvillian;

enum class Kind { first_order, second_order_auto, second_order_cross };

struct CorrelationSeries {
    std::vector<double> tau_grid;          // units 1/gamma, starts at 0, uniform
    std::vector<Complex> values;
    Kind kind{Kind::first_order};
    double normalization{1.0};             // steady-state denominator (1 for first order)
    double max_imag_residue{0.0};          // second order: |Im| before it is zeroed
};

// Steady-state residual gate applied to the rho_ss argument, relative to ||L||_inf.
inline constexpr double kSteadyStateGate = 1e-8;

// <O^dag(tau) O(0)>_ss - |<O>_ss|^2, evaluated as tr(O^dag e^{L tau}[O rho_ss]).
// This is the covariance-form integrand of the one-sided spectrum transform.
CorrelationSeries first_order(const Liouvillian& L, const DensityOperator& rho_ss,
                              const Operator& O, std::span<const double> tau_grid,
                              const num::IntegratorOptions& opts = {});

// g2_{O1 O2}(tau) = tr(O2^dag O2 e^{L tau}[O1 rho_ss O1^dag]) / (<O1^dag O1> <O2^dag O2>).
// Auto-correlation is the O1 == O2 case. Throws UndefinedCorrelationError when
// either flux denominator vanishes.
CorrelationSeries second_order(const Liouvillian& L, const DensityOperator& rho_ss,
                               const Operator& O1, const Operator& O2,
                               std::span<const double> tau_grid,
                               const num::IntegratorOptions& opts = {});

// ---- classical bounds -------------------------------------------------------

struct BoundCheck {
    bool violated{false};
    double margin{0.0};   // amount by which the classical bound is exceeded (> 0: violation)
};

struct CauchySchwarzReport {
    double g2_auto1_zero{0.0};
    double g2_auto2_zero{0.0};
    BoundCheck single_mode_1;              // g2(0) >= 1
    BoundCheck single_mode_2;
    std::vector<double> tau_grid;
    std::vector<BoundCheck> temporal_1;    // g2(0) >= g2(tau)
    std::vector<BoundCheck> temporal_2;
    std::vector<BoundCheck> two_mode;      // |g2_12(tau)| <= sqrt(g2_1(0) g2_2(0))
    bool any_violation() const;
    std::size_t violation_count() const;
};

CauchySchwarzReport cauchy_schwarz_report(const CorrelationSeries& auto1,
                                          const CorrelationSeries& auto2,
                                          const CorrelationSeries& cross);

}  // namespace cqed::correlations
