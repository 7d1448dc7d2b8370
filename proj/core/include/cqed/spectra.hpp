// spectra.hpp — Steady-state power spectra from first-order correlation series,
// and steady-state photon fluxes.
//
// The two-sided transform P(w) = (1/2pi) Int <O^dag(0), O(t)> e^{-iwt} dt is
// folded onto the one-sided form P(w) = (1/pi) Re Int_0^inf C(tau) e^{-iw tau} dtau
// using the Hermitian symmetry C(-tau) = C(tau)^*, where C is the regression
// series produced by correlations::first_order.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "cqed/correlations.hpp"

namespace cqed::spectra {

using correlations::CorrelationSeries;
using hilbert::DensityOperator;
using hilbert::Operator;

struct Spectrum {
    std::vector<double> omega_grid;   // units gamma, relative to the reference frame
    std::vector<double> values;
    std::string source_label;         // atomic / red / blue / total
    bool windowed{false};
    double window_alpha{0.0};         // decay rate of the applied exponential window
    double c0{0.0};                   // Re C(0), the incoherent intensity
    double integral{0.0};             // trapezoidal integral over omega_grid
    double parseval_rel_err{0.0};     // |integral - c0| / |c0|
    double min_value{0.0};
};

struct SpectrumOptions {
    enum class Window { automatic, off };
    Window window = Window::automatic;
    double tail_threshold = 1e-4;     // tail |C(tau_max)| relative to peak |C|
};

// Filon-type quadrature (exact for a piecewise-linear integrand), so the
// result is well-behaved for |omega * dtau| of order one and beyond.
Spectrum power_spectrum(const CorrelationSeries& corr, std::span<const double> omega_grid,
                        const std::string& source_label = "",
                        const SpectrumOptions& opts = {});

// Phi_ss = 2 kappa <E^(-) E^(+)>_ss. Requires E_minus = E_plus^dag.
double steady_flux(const DensityOperator& rho_ss, double kappa, const Operator& E_minus,
                   const Operator& E_plus);

std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace cqed::spectra
