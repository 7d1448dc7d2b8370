#include "cqed/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cqed/errors.hpp"

namespace cqed::spectra {

namespace {

using hilbert::Complex;

// phi1 = Int_0^1 (1-u) e^{au} du, phi2 = Int_0^1 u e^{au} du with a = -i theta.
// Closed forms suffer cancellation for small |a|; switch to the Taylor series.
void filon_weights(double theta, Complex& phi1, Complex& phi2) {
    const Complex a(0.0, -theta);
    if (std::abs(theta) < 0.5) {
        // I0 = sum a^n / (n+1)!, I1 = sum a^n / (n! (n+2))
        static constexpr double c0[] = {1.0,       1.0 / 2.0,   1.0 / 6.0,    1.0 / 24.0,
                                        1.0 / 120, 1.0 / 720.0, 1.0 / 5040.0, 1.0 / 40320.0,
                                        1.0 / 362880.0};
        static constexpr double c1[] = {1.0 / 2.0,  1.0 / 3.0,    1.0 / 8.0,     1.0 / 30.0,
                                        1.0 / 144,  1.0 / 840.0,  1.0 / 5760.0,  1.0 / 45360.0,
                                        1.0 / 403200.0};
        Complex i0(0.0), i1(0.0), an(1.0);
        for (int n = 0; n < 9; ++n) {
            i0 += c0[n] * an;
            i1 += c1[n] * an;
            an *= a;
        }
        phi2 = i1;
        phi1 = i0 - i1;
    } else {
        const Complex e = std::exp(a);
        const Complex i0 = (e - 1.0) / a;
        const Complex i1 = (e * (a - 1.0) + 1.0) / (a * a);
        phi2 = i1;
        phi1 = i0 - i1;
    }
}

}  // namespace

Spectrum power_spectrum(const CorrelationSeries& corr, std::span<const double> omega_grid,
                        const std::string& source_label, const SpectrumOptions& opts) {
    if (corr.kind != correlations::Kind::first_order)
        throw std::invalid_argument("power_spectrum: input must be a first-order series");
    if (corr.values.size() < 2)
        throw std::invalid_argument("power_spectrum: series too short");
    if (omega_grid.empty()) throw std::invalid_argument("power_spectrum: empty omega grid");

    const std::size_t n = corr.values.size();
    const double tau_max = corr.tau_grid.back();
    const double h = corr.tau_grid[1] - corr.tau_grid[0];

    Spectrum out;
    out.source_label = source_label;
    out.omega_grid.assign(omega_grid.begin(), omega_grid.end());
    out.c0 = corr.values.front().real();

    // Tail criterion: the transform assumes C has decayed by tau_max.
    double peak = 0.0;
    for (const auto& v : corr.values) peak = std::max(peak, std::abs(v));
    const double tail = std::abs(corr.values.back());
    std::vector<Complex> c(corr.values.begin(), corr.values.end());
    if (peak > 0.0 && tail > opts.tail_threshold * peak) {
        if (opts.window == SpectrumOptions::Window::off)
            throw std::invalid_argument(
                "power_spectrum: tau_max too short (tail " + std::to_string(tail / peak) +
                " of peak exceeds threshold) and windowing is disabled");
        out.windowed = true;
        out.window_alpha = std::log(tail / (opts.tail_threshold * peak)) / tau_max;
        for (std::size_t k = 0; k < n; ++k)
            c[k] *= std::exp(-out.window_alpha * corr.tau_grid[k]);
    }

    out.values.resize(out.omega_grid.size());
    for (std::size_t j = 0; j < out.omega_grid.size(); ++j) {
        const double w = out.omega_grid[j];
        Complex phi1, phi2;
        filon_weights(w * h, phi1, phi2);
        // S0 = sum_{k<n-1} C_k z^k, S1 = sum_{k<n-1} C_{k+1} z^k with z = e^{-iwh}.
        const Complex z = std::exp(Complex(0.0, -w * h));
        Complex zp(1.0, 0.0), s0(0.0), s1(0.0);
        for (std::size_t k = 0; k + 1 < n; ++k) {
            s0 += c[k] * zp;
            s1 += c[k + 1] * zp;
            zp *= z;
        }
        out.values[j] = (h / M_PI) * (phi1 * s0 + phi2 * s1).real();
    }

    double vmax = 0.0, vmin = 0.0;
    for (double v : out.values) {
        vmax = std::max(vmax, v);
        vmin = std::min(vmin, v);
    }
    out.min_value = vmin;
    if (vmin < -1e-6 * std::max(vmax, 1e-300))
        throw SolverError("power_spectrum: spectral density negative beyond tolerance (min " +
                          std::to_string(vmin) + ", max " + std::to_string(vmax) + ")");

    // Trapezoidal Parseval diagnostic against the incoherent intensity C(0).
    double integral = 0.0;
    for (std::size_t j = 0; j + 1 < out.omega_grid.size(); ++j)
        integral += 0.5 * (out.values[j] + out.values[j + 1]) *
                    (out.omega_grid[j + 1] - out.omega_grid[j]);
    out.integral = integral;
    out.parseval_rel_err =
        (std::abs(out.c0) > 1e-300) ? std::abs(integral - out.c0) / std::abs(out.c0)
                                    : std::abs(integral);
    return out;
}

double steady_flux(const DensityOperator& rho_ss, double kappa, const Operator& E_minus,
                   const Operator& E_plus) {
    if (E_minus.layout() != rho_ss.layout() || E_plus.layout() != rho_ss.layout())
        throw std::invalid_argument("steady_flux: layout mismatch");
    const hilbert::SparseMatrix diff =
        E_minus.matrix() - hilbert::SparseMatrix(E_plus.matrix().adjoint());
    double defect = 0.0;
    for (int k = 0; k < diff.outerSize(); ++k)
        for (hilbert::SparseMatrix::InnerIterator it(diff, k); it; ++it)
            defect = std::max(defect, std::abs(it.value()));
    if (defect > 1e-12)
        throw std::invalid_argument("steady_flux: E_minus is not the adjoint of E_plus");

    const Complex val = hilbert::expectation(rho_ss, E_minus * E_plus);
    const double flux = 2.0 * kappa * val.real();
    if (std::abs(val.imag()) > 1e-10 * std::max(1.0, std::abs(val)))
        throw SolverError("steady_flux: imaginary residue " + std::to_string(val.imag()));
    if (flux < -1e-10)
        throw SolverError("steady_flux: negative flux " + std::to_string(flux) +
                          " signals a corrupt steady state");
    return std::max(flux, 0.0);
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    if (n < 2 || !(hi > lo)) throw std::invalid_argument("linspace: need hi > lo and n >= 2");
    std::vector<double> grid(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) grid[i] = lo + step * static_cast<double>(i);
    grid.back() = hi;
    return grid;
}

}  // namespace cqed::spectra
