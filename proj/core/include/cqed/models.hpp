// models.hpp — The three concrete systems: a driven two-level atom coupled to
// two spectrally-separated cavity modes, its dressed-state secular
// approximation, and the cesium D2 hyperfine implementation, plus the
// closed-form dressed-frame g2 limits and the hyperfine dipole coefficients.

#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cqed/lindblad.hpp"

namespace cqed::models {

using hilbert::DensityOperator;
using hilbert::Operator;
using hilbert::SpaceLayout;

// ---- parameters -------------------------------------------------------------

// All rates in units of gamma, the atomic FWHM linewidth.
struct TwoLevelParams {
    double gamma = 1.0;
    double kappa = 2.5;        // cavity field halfwidth
    double g = 1.0;            // atom-cavity coupling, identical for both modes
    double omega_rabi = 25.0;  // laser Rabi frequency
    double delta0 = 25.0;      // half the mode splitting (half the free spectral range)
    std::size_t n_max = 3;     // Fock truncation per cavity mode
};

enum class Manifold { G3, G4, E2, E3, E4, E5 };

int manifold_f(Manifold m) noexcept;
bool manifold_excited(Manifold m) noexcept;
std::string manifold_name(Manifold m);          // "3", "4", "2p", "3p", "4p", "5p"
Manifold parse_manifold(const std::string& name);

struct CesiumParams {
    double gamma = 1.0;
    double kappa = 2.5;
    double g = 1.0;            // circular-basis coupling; horizontal coupling is sqrt(2) g
    double omega_rabi = 25.0;
    double delta0 = 25.0;
    std::size_t n_max = 3;

    // Interaction-picture energies relative to F=4 (ground) and F'=5' (excited),
    // in units of gamma; defaults from the standard cesium D2 datasheet with
    // gamma/2pi = 5.2 MHz. Delta_{5'5'} = 0 by construction.
    double ground_splitting = kDefaultGroundSplitting;
    std::map<int, double> excited_detunings = default_excited_detunings();

    std::set<Manifold> included_manifolds = default_manifolds();
    int drive_polarization = -1;   // q = -1 targets m_F = -4; q = +1 the mirror

    static constexpr double kDefaultGroundSplitting = -9192.631770 / 5.2;
    static std::map<int, double> default_excited_detunings();
    // F = 4 and F' = 3',4',5'. F = 3 is excluded by default: it is a dark
    // shelf reached only through slow cavity-assisted leakage, and the
    // cycling-transition regime of interest is the steady state without it.
    static std::set<Manifold> default_manifolds();
};

// ---- validity metadata --------------------------------------------------------

struct ModeResolutionCheck {
    double ratio = 0.0;       // delta0 / max(g, kappa)
    bool resolved = false;    // ratio >= 5
};

struct SuppressionCheck {
    int f_prime = 0;
    double ratio = 0.0;       // |delta0 - Delta_{F'5'}| / gamma
    bool suppressed = false;  // ratio >= 10
};

struct SystemValidity {
    ModeResolutionCheck mode_resolution;
    std::vector<SuppressionCheck> suppression;   // cesium only
};

// ---- built systems ------------------------------------------------------------

struct BuiltSystem {
    std::string model_name;
    SpaceLayout layout;
    lindblad::Liouvillian liouvillian;
    std::map<std::string, Operator> named_operators;
    SystemValidity validity;

    const Operator& op(const std::string& name) const;   // throws on unknown name
    bool has_op(const std::string& name) const;
};

// H = (Omega/2)(sm + sp) + delta0 (b^dag b - r^dag r) + g([r+b] sp + sm [b^dag + r^dag]),
// channels (sm, gamma), (r, 2 kappa), (b, 2 kappa).
BuiltSystem build_two_level(const TwoLevelParams& p);

// Secular dressed-frame model, valid on resonance (requires omega_rabi == delta0):
// H = (g/2)[(r - b^dag) smD + spD (r^dag - b)] with the dressed operators derived
// from |+-> = (|g> +- |e>)/sqrt(2); decay channels as in the bare model.
BuiltSystem build_dressed_secular(const TwoLevelParams& p);

// Closed-form dressed-frame correlation limits (valid for kappa >> g, gamma).
// The same auto form applies to both cavity modes.
double dressed_g2_auto(double tau, double gamma);
double dressed_g2_cross(double tau, double gamma, double kappa);

// Hyperfine dipole coefficient C(F, F', m_F, q) of the D2 line (S=1/2, L=0->1,
// J=1/2->3/2, I=7/2), normalized so that C(4, 5', +-4, +-1) = 1. F' is passed
// without the prime (2..5). Throws on invalid quantum numbers.
double clebsch_gordan(int f, int f_prime, int m_f, int q);

// Cesium D2 system per the hyperfine master equation; the drive couples the
// cycling transition and both cavity modes couple through the horizontal
// dipole operator D_h = (D_+ + D_-)/sqrt(2) with g_h = sqrt(2) g.
BuiltSystem build_cesium(const CesiumParams& p);

// Steady-state population in the two cycling-transition sublevels
// (|4,-4> and |5',-5'> for q = -1 drive; mirror states for q = +1).
double population_confinement(const DensityOperator& rho_ss, const BuiltSystem& system);

// ---- truncation convergence ----------------------------------------------------

struct ConvergenceReport {
    std::size_t n_max = 0;
    std::size_t n_max_refined = 0;
    std::map<std::string, double> rel_change;
    double max_rel_change = 0.0;
};

using ObservableMap = std::map<std::string, double>;

// Re-runs the observables with the Fock truncation raised by one and reports
// the relative change, making the truncation choice auditable.
ConvergenceReport fock_convergence(
    const std::function<BuiltSystem(std::size_t)>& build_at, std::size_t n_max,
    const std::function<ObservableMap(const BuiltSystem&)>& observables);

}  // namespace cqed::models
