#include "cqed/models.hpp"

#include <cmath>
#include <stdexcept>

#include "cqed/wigner.hpp"

namespace cqed::models {

namespace {

using hilbert::Complex;
using hilbert::SparseMatrix;
using lindblad::CollapseChannel;

void check_common_rates(double gamma, double kappa, double g, double omega, double delta0,
                        std::size_t n_max) {
    if (!(gamma > 0.0)) throw std::invalid_argument("model: gamma must be > 0");
    if (!(kappa > 0.0)) throw std::invalid_argument("model: kappa must be > 0");
    if (g < 0.0) throw std::invalid_argument("model: g must be >= 0");
    if (omega < 0.0) throw std::invalid_argument("model: omega_rabi must be >= 0");
    if (!(delta0 > 0.0)) throw std::invalid_argument("model: delta0 must be > 0");
    if (n_max < 1) throw std::invalid_argument("model: n_max must be >= 1");
}

ModeResolutionCheck resolution_check(double delta0, double g, double kappa) {
    ModeResolutionCheck c;
    c.ratio = delta0 / std::max({g, kappa, 1e-300});
    c.resolved = c.ratio >= 5.0;
    return c;
}

}  // namespace

const Operator& BuiltSystem::op(const std::string& name) const {
    auto it = named_operators.find(name);
    if (it == named_operators.end())
        throw std::invalid_argument("BuiltSystem: no operator named '" + name + "' in model " +
                                    model_name);
    return it->second;
}

bool BuiltSystem::has_op(const std::string& name) const {
    return named_operators.count(name) > 0;
}

// ---- two-level / two-mode model ---------------------------------------------

namespace {

struct ModeOps {
    SpaceLayout layout;
    Operator r, b, r_dag, b_dag;
};

ModeOps make_mode_ops(std::size_t atom_dim, std::size_t n_max) {
    SpaceLayout layout({{"atom", atom_dim}, {"red", n_max + 1}, {"blue", n_max + 1}});
    const Operator a = hilbert::annihilation(n_max);
    ModeOps ops{layout,
                hilbert::embed(a.matrix(), layout, "red"),
                hilbert::embed(a.matrix(), layout, "blue"),
                {},
                {}};
    ops.r_dag = ops.r.adjoint();
    ops.b_dag = ops.b.adjoint();
    return ops;
}

}  // namespace

BuiltSystem build_two_level(const TwoLevelParams& p) {
    check_common_rates(p.gamma, p.kappa, p.g, p.omega_rabi, p.delta0, p.n_max);

    ModeOps m = make_mode_ops(2, p.n_max);
    const SpaceLayout& layout = m.layout;

    const Operator sm = hilbert::transition(layout, "atom", 1, 0);   // |g><e|
    const Operator sp = sm.adjoint();

    const Operator h = p.omega_rabi / 2.0 * (sm + sp) +
                       p.delta0 * (m.b_dag * m.b - m.r_dag * m.r) +
                       p.g * ((m.r + m.b) * sp + sm * (m.b_dag + m.r_dag));

    std::vector<CollapseChannel> channels{{sm, p.gamma}, {m.r, 2.0 * p.kappa}, {m.b, 2.0 * p.kappa}};

    BuiltSystem sys;
    sys.model_name = "two-level";
    sys.layout = layout;
    sys.liouvillian = lindblad::build_liouvillian(h, std::move(channels));
    sys.named_operators = {
        {"sigma_minus", sm},
        {"sigma_plus", sp},
        {"r", m.r},
        {"b", m.b},
        {"E_plus", m.r + m.b},
        {"E_minus", m.r_dag + m.b_dag},
        {"n_r", m.r_dag * m.r},
        {"n_b", m.b_dag * m.b},
        {"atomic_emission", sm},
    };
    sys.validity.mode_resolution = resolution_check(p.delta0, p.g, p.kappa);
    return sys;
}

BuiltSystem build_dressed_secular(const TwoLevelParams& p) {
    check_common_rates(p.gamma, p.kappa, p.g, p.omega_rabi, p.delta0, p.n_max);
    if (std::abs(p.omega_rabi - p.delta0) > 1e-12 * std::max(1.0, p.delta0))
        throw std::invalid_argument(
            "build_dressed_secular: requires the resonance condition omega_rabi == delta0");

    ModeOps m = make_mode_ops(2, p.n_max);
    const SpaceLayout& layout = m.layout;

    // Dressed basis |+-> = (|g> +- |e>)/sqrt(2) expressed on the bare (|g>,|e>) basis.
    hilbert::DenseMatrix sp_d_local(2, 2);   // |+><-|
    sp_d_local << 0.5, -0.5, 0.5, -0.5;
    const Operator sp_d = hilbert::embed(SparseMatrix(sp_d_local.sparseView()), layout, "atom");
    const Operator sm_d = sp_d.adjoint();
    hilbert::DenseMatrix sz_d_local(2, 2);   // |+><+| - |-><-|
    sz_d_local << 0.0, 1.0, 1.0, 0.0;
    const Operator sz_d = hilbert::embed(SparseMatrix(sz_d_local.sparseView()), layout, "atom");

    const Operator h = p.g / 2.0 * ((m.r - m.b_dag) * sm_d + sp_d * (m.r_dag - m.b));

    const Operator sm = hilbert::transition(layout, "atom", 1, 0);
    std::vector<CollapseChannel> channels{{sm, p.gamma}, {m.r, 2.0 * p.kappa}, {m.b, 2.0 * p.kappa}};

    BuiltSystem sys;
    sys.model_name = "dressed";
    sys.layout = layout;
    sys.liouvillian = lindblad::build_liouvillian(h, std::move(channels));
    sys.named_operators = {
        {"sigma_minus", sm},
        {"sigma_plus", sm.adjoint()},
        {"sigma_minus_dressed", sm_d},
        {"sigma_plus_dressed", sp_d},
        {"sigma_z_dressed", sz_d},
        {"r", m.r},
        {"b", m.b},
        {"E_plus", m.r + m.b},
        {"E_minus", m.r_dag + m.b_dag},
        {"atomic_emission", sm},
    };
    sys.validity.mode_resolution = resolution_check(p.delta0, p.g, p.kappa);
    return sys;
}

double dressed_g2_auto(double tau, double gamma) {
    if (tau < 0.0) throw std::invalid_argument("dressed_g2_auto: tau must be >= 0");
    return 1.0 - std::exp(-0.5 * gamma * tau);
}

double dressed_g2_cross(double tau, double gamma, double kappa) {
    if (tau < 0.0) throw std::invalid_argument("dressed_g2_cross: tau must be >= 0");
    const double ek = std::exp(-kappa * tau);
    return std::exp(-0.5 * gamma * tau) - 1.0 + 0.5 * (2.0 - ek) * (2.0 - ek) +
           0.5 * std::exp(-2.0 * kappa * tau);
}

// ---- cesium D2 hyperfine model ------------------------------------------------

int manifold_f(Manifold m) noexcept {
    switch (m) {
        case Manifold::G3: return 3;
        case Manifold::G4: return 4;
        case Manifold::E2: return 2;
        case Manifold::E3: return 3;
        case Manifold::E4: return 4;
        case Manifold::E5: return 5;
    }
    return 0;
}

bool manifold_excited(Manifold m) noexcept {
    return m == Manifold::E2 || m == Manifold::E3 || m == Manifold::E4 || m == Manifold::E5;
}

std::string manifold_name(Manifold m) {
    switch (m) {
        case Manifold::G3: return "3";
        case Manifold::G4: return "4";
        case Manifold::E2: return "2p";
        case Manifold::E3: return "3p";
        case Manifold::E4: return "4p";
        case Manifold::E5: return "5p";
    }
    throw std::invalid_argument("manifold_name: bad manifold");
}

Manifold parse_manifold(const std::string& name) {
    if (name == "3") return Manifold::G3;
    if (name == "4") return Manifold::G4;
    if (name == "2p") return Manifold::E2;
    if (name == "3p") return Manifold::E3;
    if (name == "4p") return Manifold::E4;
    if (name == "5p") return Manifold::E5;
    throw std::invalid_argument("parse_manifold: unknown manifold '" + name + "'");
}

std::map<int, double> CesiumParams::default_excited_detunings() {
    // Excited hyperfine intervals 5'-4' = 251.0916 MHz, 4'-3' = 201.2871 MHz,
    // 3'-2' = 151.2247 MHz, in units of gamma with gamma/2pi = 5.2 MHz.
    const double d45 = -251.0916 / 5.2;
    const double d35 = -(251.0916 + 201.2871) / 5.2;
    const double d25 = -(251.0916 + 201.2871 + 151.2247) / 5.2;
    return {{2, d25}, {3, d35}, {4, d45}};
}

std::set<Manifold> CesiumParams::default_manifolds() {
    // The F=3 ground manifold is excluded by default: F'=5' cannot decay into
    // it (dipole-forbidden), but cavity-assisted sigma+ leakage through
    // F'=3',4' slowly shelves population there (~1e-5 gamma at g = kappa =
    // gamma) while the off-resonant repump is slower still. The physical
    // regime of interest is the repump-stabilized cycling dynamics, which is
    // the steady state of the F=3-excluded model. Include "3" (and "2p") via
    // the manifold set to study the shelving itself.
    return {Manifold::G4, Manifold::E3, Manifold::E4, Manifold::E5};
}

namespace {

int parity(int n) { return (std::abs(n) % 2 == 0) ? 1 : -1; }

// Unnormalized hyperfine dipole amplitude for |F,m> <- |F', m+q| on the D2
// line (J = 1/2 -> J' = 3/2, I = 7/2), in units of the reduced J matrix
// element: a 6-j hyperfine reduction times a 3-j Zeeman factor.
double raw_dipole_coefficient(int f, int f_prime, int m_f, int q) {
    constexpr int two_j = 1, two_jp = 3, two_i = 7;
    const double six = wigner::six_j(two_j, two_jp, 2, 2 * f_prime, 2 * f, two_i);
    const double three =
        wigner::three_j(2 * f_prime, 2, 2 * f, 2 * (m_f + q), -2 * q, -2 * m_f);
    const double sign = parity(f_prime + 5) * parity(f_prime - 1 + m_f);
    return sign * std::sqrt((2.0 * f_prime + 1.0) * (two_j + 1.0)) * std::sqrt(2.0 * f + 1.0) *
           six * three;
}

}  // namespace

double clebsch_gordan(int f, int f_prime, int m_f, int q) {
    if (f != 3 && f != 4) throw std::invalid_argument("clebsch_gordan: F must be 3 or 4");
    if (f_prime < 2 || f_prime > 5)
        throw std::invalid_argument("clebsch_gordan: F' must be in 2..5");
    if (std::abs(m_f) > f) throw std::invalid_argument("clebsch_gordan: |m_F| > F");
    if (q != -1 && q != 0 && q != 1)
        throw std::invalid_argument("clebsch_gordan: q must be -1, 0, or +1");
    if (std::abs(m_f + q) > f_prime)
        throw std::invalid_argument("clebsch_gordan: |m_F + q| > F'");

    // Normalized to unity on the cycling transition.
    static const double cycling = raw_dipole_coefficient(4, 5, 4, 1);
    return raw_dipole_coefficient(f, f_prime, m_f, q) / cycling;
}

namespace {

struct AtomicLevel {
    Manifold manifold;
    int m;
};

struct AtomicBasis {
    std::vector<AtomicLevel> levels;
    std::map<std::pair<int, int>, std::size_t> index;   // (manifold as int, m) -> index

    static AtomicBasis make(const std::set<Manifold>& included) {
        AtomicBasis basis;
        for (Manifold man : {Manifold::G3, Manifold::G4, Manifold::E2, Manifold::E3,
                             Manifold::E4, Manifold::E5}) {
            if (!included.count(man)) continue;
            const int f = manifold_f(man);
            for (int m = -f; m <= f; ++m) {
                basis.index[{static_cast<int>(man), m}] = basis.levels.size();
                basis.levels.push_back({man, m});
            }
        }
        return basis;
    }

    std::size_t dim() const { return levels.size(); }
    bool has(Manifold man, int m) const {
        return index.count({static_cast<int>(man), m}) > 0;
    }
    std::size_t at(Manifold man, int m) const {
        auto it = index.find({static_cast<int>(man), m});
        if (it == index.end())
            throw std::invalid_argument("cesium basis: level (" + manifold_name(man) + ", " +
                                        std::to_string(m) + ") not included");
        return it->second;
    }
};

Manifold excited_manifold_for(int f_prime) {
    switch (f_prime) {
        case 2: return Manifold::E2;
        case 3: return Manifold::E3;
        case 4: return Manifold::E4;
        case 5: return Manifold::E5;
    }
    throw std::invalid_argument("cesium: bad F'");
}

// D_q on the atomic subspace: sum over F, F', m of C(F,F',m,q) |F,m><F', m+q|.
SparseMatrix dipole_operator(const AtomicBasis& basis, int q) {
    std::vector<Eigen::Triplet<Complex>> trips;
    for (Manifold gman : {Manifold::G3, Manifold::G4}) {
        const int f = manifold_f(gman);
        if (!basis.has(gman, -f)) continue;   // manifold not included
        for (int fp = 2; fp <= 5; ++fp) {
            const Manifold eman = excited_manifold_for(fp);
            if (!basis.has(eman, -fp)) continue;
            for (int m = -f; m <= f; ++m) {
                const int mp = m + q;
                if (std::abs(mp) > fp) continue;
                const double c = clebsch_gordan(f, fp, m, q);
                if (c == 0.0) continue;
                trips.emplace_back(static_cast<int>(basis.at(gman, m)),
                                   static_cast<int>(basis.at(eman, mp)), Complex(c, 0.0));
            }
        }
    }
    SparseMatrix d(static_cast<Eigen::Index>(basis.dim()), static_cast<Eigen::Index>(basis.dim()));
    d.setFromTriplets(trips.begin(), trips.end());
    return d;
}

}  // namespace

BuiltSystem build_cesium(const CesiumParams& p) {
    check_common_rates(p.gamma, p.kappa, p.g, p.omega_rabi, p.delta0, p.n_max);
    if (p.drive_polarization != -1 && p.drive_polarization != 1)
        throw std::invalid_argument("build_cesium: drive polarization must be -1 or +1");
    if (!p.included_manifolds.count(Manifold::G4) || !p.included_manifolds.count(Manifold::E5))
        throw std::invalid_argument(
            "build_cesium: manifolds F=4 and F'=5' host the cycling transition and cannot be excluded");

    const AtomicBasis basis = AtomicBasis::make(p.included_manifolds);
    ModeOps mo = make_mode_ops(basis.dim(), p.n_max);
    const SpaceLayout& layout = mo.layout;

    // Bare atomic Hamiltonian: Delta_34 on the F=3 ground manifold and
    // Delta_{F'5'} on the excited manifolds (zero on F'=5').
    hilbert::DenseMatrix h0_local =
        hilbert::DenseMatrix::Zero(static_cast<Eigen::Index>(basis.dim()),
                                   static_cast<Eigen::Index>(basis.dim()));
    for (std::size_t i = 0; i < basis.levels.size(); ++i) {
        const AtomicLevel& lvl = basis.levels[i];
        double e = 0.0;
        if (lvl.manifold == Manifold::G3) e = p.ground_splitting;
        if (manifold_excited(lvl.manifold)) {
            const int fp = manifold_f(lvl.manifold);
            e = (fp == 5) ? 0.0 : p.excited_detunings.at(fp);
        }
        h0_local(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = e;
    }

    const SparseMatrix d_minus_local = dipole_operator(basis, -1);
    const SparseMatrix d_zero_local = dipole_operator(basis, 0);
    const SparseMatrix d_plus_local = dipole_operator(basis, +1);

    const Operator h0 = hilbert::embed(SparseMatrix(h0_local.sparseView()), layout, "atom");
    const Operator d_minus = hilbert::embed(d_minus_local, layout, "atom");
    const Operator d_zero = hilbert::embed(d_zero_local, layout, "atom");
    const Operator d_plus = hilbert::embed(d_plus_local, layout, "atom");
    const Operator d_h = (1.0 / std::sqrt(2.0)) * (d_plus + d_minus);
    const Operator d_drive = (p.drive_polarization == -1) ? d_minus : d_plus;

    const double g_h = std::sqrt(2.0) * p.g;
    const Operator h = h0 + p.delta0 * (mo.b_dag * mo.b - mo.r_dag * mo.r) +
                       p.omega_rabi / 2.0 * (d_drive + d_drive.adjoint()) +
                       g_h * ((mo.r + mo.b) * d_h.adjoint() + d_h * (mo.r_dag + mo.b_dag));

    std::vector<CollapseChannel> channels{{d_minus, p.gamma},
                                          {d_zero, p.gamma},
                                          {d_plus, p.gamma},
                                          {mo.r, 2.0 * p.kappa},
                                          {mo.b, 2.0 * p.kappa}};

    // Cycling-state projectors (mirror states for q = +1).
    const int mg = (p.drive_polarization == -1) ? -4 : 4;
    const int me = (p.drive_polarization == -1) ? -5 : 5;
    const std::size_t ig = basis.at(Manifold::G4, mg);
    const std::size_t ie = basis.at(Manifold::E5, me);
    const Operator p_ground = hilbert::transition(layout, "atom", ig, ig);
    const Operator p_excited = hilbert::transition(layout, "atom", ie, ie);

    BuiltSystem sys;
    sys.model_name = "cesium";
    sys.layout = layout;
    sys.liouvillian = lindblad::build_liouvillian(h, std::move(channels));
    sys.named_operators = {
        {"D_minus", d_minus},
        {"D_zero", d_zero},
        {"D_plus", d_plus},
        {"D_h", d_h},
        {"r", mo.r},
        {"b", mo.b},
        {"E_plus", mo.r + mo.b},
        {"E_minus", mo.r_dag + mo.b_dag},
        {"P_cycling_ground", p_ground},
        {"P_cycling_excited", p_excited},
        {"P_cycling", p_ground + p_excited},
        {"atomic_emission", d_drive},
    };
    sys.validity.mode_resolution = resolution_check(p.delta0, std::sqrt(2.0) * p.g, p.kappa);
    for (int fp = 2; fp <= 4; ++fp) {   // F'=5' hosts the resonant transition itself
        if (!p.included_manifolds.count(excited_manifold_for(fp))) continue;
        SuppressionCheck c;
        c.f_prime = fp;
        c.ratio = std::abs(p.delta0 - p.excited_detunings.at(fp)) / p.gamma;
        c.suppressed = c.ratio >= 10.0;
        sys.validity.suppression.push_back(c);
    }
    return sys;
}

double population_confinement(const DensityOperator& rho_ss, const BuiltSystem& system) {
    if (!system.has_op("P_cycling_ground") || !system.has_op("P_cycling_excited"))
        throw std::invalid_argument(
            "population_confinement: system has no cycling projectors (not a cesium build?)");
    return hilbert::real_expectation(rho_ss, system.op("P_cycling_ground")) +
           hilbert::real_expectation(rho_ss, system.op("P_cycling_excited"));
}

ConvergenceReport fock_convergence(
    const std::function<BuiltSystem(std::size_t)>& build_at, std::size_t n_max,
    const std::function<ObservableMap(const BuiltSystem&)>& observables) {
    ConvergenceReport rep;
    rep.n_max = n_max;
    rep.n_max_refined = n_max + 1;
    const ObservableMap coarse = observables(build_at(n_max));
    const ObservableMap fine = observables(build_at(n_max + 1));
    for (const auto& [key, v0] : coarse) {
        auto it = fine.find(key);
        if (it == fine.end()) continue;
        const double scale = std::max({std::abs(v0), std::abs(it->second), 1e-300});
        const double change = std::abs(v0 - it->second) / scale;
        rep.rel_change[key] = change;
        rep.max_rel_change = std::max(rep.max_rel_change, change);
    }
    return rep;
}

}  // namespace cqed::models
