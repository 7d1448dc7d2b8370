#include "cqed/validate.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "cqed/correlations.hpp"
#include "cqed/models.hpp"
#include "cqed/spectra.hpp"

namespace cqed::validate {

namespace {

using correlations::CorrelationSeries;
using hilbert::Complex;
using hilbert::DenseMatrix;
using hilbert::DensityOperator;
using hilbert::Operator;
using hilbert::SpaceLayout;
using lindblad::Liouvillian;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

struct CriterionBuilder {
    CriterionResult result;
    explicit CriterionBuilder(int id, std::string name) {
        result.id = id;
        result.name = std::move(name);
    }
    void check(bool ok, const std::string& what) {
        result.checks.push_back({what, ok});
    }
    void within(double value, double target, double tol, const std::string& label) {
        const bool ok = std::abs(value - target) <= tol;
        check(ok, label + " = " + fmt(value) + " (target " + fmt(target) + " +- " + fmt(tol) + ")");
    }
    void at_least(double value, double bound, const std::string& label) {
        check(value >= bound, label + " = " + fmt(value) + " (>= " + fmt(bound) + ")");
    }
    void at_most(double value, double bound, const std::string& label) {
        check(value <= bound, label + " = " + fmt(value) + " (<= " + fmt(bound) + ")");
    }
    CriterionResult finish(double seconds) {
        result.seconds = seconds;
        result.passed = true;
        for (const auto& c : result.checks) result.passed = result.passed && c.passed;
        return result;
    }
};

// ---- shared artifacts --------------------------------------------------------

struct TwoLevelRun {
    models::BuiltSystem system;
    DensityOperator steady;
    std::map<std::string, CorrelationSeries> g2;   // E, b, r, br over tau [0, 25]
};

struct SpectrumRun {
    double g;
    spectra::Spectrum atomic, total, red, blue;
};

struct Context {
    ValidationOptions opts;
    std::ostream* log = nullptr;
    std::optional<TwoLevelRun> tl;                 // g = kappa = gamma
    std::vector<SpectrumRun> spectrum_runs;        // kappa = 2.5, g in {0.25, 1, 2.5}
    std::vector<std::pair<std::string, DensityOperator>> steady_states;

    void note(const std::string& line) {
        if (log) (*log) << "         " << line << "\n" << std::flush;
    }
};

const TwoLevelRun& two_level_run(Context& ctx) {
    if (ctx.tl) return *ctx.tl;
    models::TwoLevelParams p;
    p.kappa = 1.0;
    p.g = 1.0;
    p.n_max = ctx.opts.n_max;
    TwoLevelRun run{models::build_two_level(p), {}, {}};
    run.steady = lindblad::steady_state(run.system.liouvillian, ctx.opts.solver);
    const std::vector<double> tau = lindblad::uniform_grid(25.0, 2501);
    const auto& L = run.system.liouvillian;
    const auto g2 = [&](const std::string& a, const std::string& b) {
        return correlations::second_order(L, run.steady, run.system.op(a), run.system.op(b), tau);
    };
    ctx.note("two-level g = kappa = gamma: correlation series");
    run.g2.emplace("E", g2("E_plus", "E_plus"));
    run.g2.emplace("b", g2("b", "b"));
    run.g2.emplace("r", g2("r", "r"));
    run.g2.emplace("br", g2("b", "r"));
    ctx.tl = std::move(run);
    ctx.steady_states.emplace_back("two-level g=k=1", ctx.tl->steady);
    return *ctx.tl;
}

const std::vector<SpectrumRun>& spectrum_runs(Context& ctx) {
    if (!ctx.spectrum_runs.empty()) return ctx.spectrum_runs;
    const std::vector<double> tau = lindblad::uniform_grid(40.0, 8001);
    const std::vector<double> omega = spectra::linspace(-600.0, 600.0, 12001);
    for (double g : {0.25, 1.0, 2.5}) {
        models::TwoLevelParams p;
        p.kappa = 2.5;
        p.g = g;
        p.n_max = ctx.opts.n_max;
        const auto sys = models::build_two_level(p);
        const auto rho = lindblad::steady_state(sys.liouvillian, ctx.opts.solver);
        ctx.note("spectra at g = " + fmt(g) + " gamma");
        const auto corr = [&](const std::string& name) {
            return correlations::first_order(sys.liouvillian, rho, sys.op(name), tau);
        };
        SpectrumRun run{g,
                        spectra::power_spectrum(corr("sigma_minus"), omega, "atomic"),
                        spectra::power_spectrum(corr("E_plus"), omega, "total"),
                        spectra::power_spectrum(corr("r"), omega, "red"),
                        spectra::power_spectrum(corr("b"), omega, "blue")};
        ctx.spectrum_runs.push_back(std::move(run));
        ctx.steady_states.emplace_back("two-level k=2.5 g=" + fmt(g), rho);
    }
    return ctx.spectrum_runs;
}

struct Peak {
    double omega;
    double height;
};

// Local maxima above 1% of the global maximum. The exact spectra carry real
// but minuscule extra structure (elastic leakage through the mode Lorentzians
// at ~1e-3 of the peak, second-order sidebands at +-2 Delta0 at ~2e-3), which
// is far below anything visible at figure scale; the structural claims under
// test concern the dominant peaks.
std::vector<Peak> find_peaks(const spectra::Spectrum& s, double prominence_rel = 1e-2) {
    double vmax = 0.0;
    for (double v : s.values) vmax = std::max(vmax, v);
    std::vector<Peak> peaks;
    for (std::size_t i = 1; i + 1 < s.values.size(); ++i) {
        if (s.values[i] > s.values[i - 1] && s.values[i] >= s.values[i + 1] &&
            s.values[i] > prominence_rel * vmax)
            peaks.push_back({s.omega_grid[i], s.values[i]});
    }
    return peaks;
}

double value_at(const spectra::Spectrum& s, double omega) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < s.omega_grid.size(); ++i)
        if (std::abs(s.omega_grid[i] - omega) < std::abs(s.omega_grid[best] - omega)) best = i;
    return s.values[best];
}

// ---- independent dense oracle (criterion 8) -----------------------------------
//
// Builds the dense Liouvillian column by column from the commutator/dissipator
// formula written out in plain dense arithmetic; no sharing with the sparse
// Kronecker assembly under test.

DenseMatrix oracle_apply(const DenseMatrix& h, const std::vector<lindblad::CollapseChannel>& chans,
                         const DenseMatrix& x) {
    const Complex i_unit(0.0, 1.0);
    DenseMatrix out = -i_unit * (h * x - x * h);
    for (const auto& ch : chans) {
        const DenseMatrix o = ch.op.dense();
        const DenseMatrix od = o.adjoint();
        out += ch.rate * (o * x * od - 0.5 * (od * o * x + x * od * o));
    }
    return out;
}

DenseMatrix oracle_dense_liouvillian(const DenseMatrix& h,
                                     const std::vector<lindblad::CollapseChannel>& chans) {
    const auto n = h.rows();
    DenseMatrix big = DenseMatrix::Zero(n * n, n * n);
    DenseMatrix unit = DenseMatrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) {
            unit(i, j) = 1.0;
            const DenseMatrix col = oracle_apply(h, chans, unit);
            unit(i, j) = 0.0;
            big.col(i + n * j) = Eigen::Map<const Eigen::VectorXcd>(col.data(), n * n);
        }
    return big;
}

struct RandomSystem {
    SpaceLayout layout;
    Liouvillian liouvillian;
    DenseMatrix h;
    std::vector<lindblad::CollapseChannel> channels;
};

RandomSystem make_random_system(unsigned seed, std::size_t variant) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> rate(0.3, 1.2);

    SpaceLayout layout = [&]() -> SpaceLayout {
        switch (variant % 4) {
            case 0: return hilbert::single_space("s", 4);
            case 1: return SpaceLayout({{"a", 2}, {"b", 2}});
            case 2: return SpaceLayout({{"a", 2}, {"b", 3}});
            default: return SpaceLayout({{"a", 2}, {"b", 4}});
        }
    }();
    const auto n = static_cast<Eigen::Index>(layout.total_dim());

    DenseMatrix a(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) a(i, j) = Complex(unit(rng), unit(rng));
    DenseMatrix h = 0.5 * (a + a.adjoint().eval());

    std::vector<lindblad::CollapseChannel> chans;
    // A global lowering-type operator keeps the steady state unique, plus one
    // fully random jump operator.
    DenseMatrix lower = DenseMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) lower(i, i + 1) = 1.0 + 0.2 * unit(rng);
    chans.push_back({Operator(layout, lower), rate(rng)});
    DenseMatrix j1(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) j1(i, j) = 0.5 * Complex(unit(rng), unit(rng));
    chans.push_back({Operator(layout, j1), rate(rng)});

    Liouvillian L = lindblad::build_liouvillian(Operator(layout, h), chans);
    return {layout, std::move(L), std::move(h), std::move(chans)};
}

DenseMatrix oracle_propagate(const DenseMatrix& big_l, const DenseMatrix& x0, double t) {
    const auto n2 = big_l.rows();
    const DenseMatrix prop = (t * big_l).exp();
    const Eigen::VectorXcd v = prop * Eigen::Map<const Eigen::VectorXcd>(x0.data(), n2);
    const auto n = x0.rows();
    return Eigen::Map<const DenseMatrix>(v.data(), n, n);
}

DensityOperator maximally_mixed(const SpaceLayout& layout) {
    const auto n = static_cast<Eigen::Index>(layout.total_dim());
    DenseMatrix m = DenseMatrix::Identity(n, n) / static_cast<double>(n);
    return DensityOperator(layout, std::move(m));
}

// ---- criteria -----------------------------------------------------------------

using Clock = std::chrono::steady_clock;

CriterionResult criterion_1(Context& ctx) {
    const auto t0 = Clock::now();
    CriterionBuilder c(1, "two-level quoted correlation values (g = kappa = gamma)");
    if (ctx.opts.n_max < 3)
        c.result.warnings.push_back("n_max = " + std::to_string(ctx.opts.n_max) +
                                    " is below the pinned minimum of 3 for this criterion");
    const TwoLevelRun& run = two_level_run(ctx);
    c.within(run.g2.at("E").values[0].real(), 1.5, 0.05, "g2_E(0)");
    c.within(run.g2.at("b").values[0].real(), 0.36, 0.02, "g2_b(0)");
    c.within(run.g2.at("br").values[0].real(), 1.32, 0.02, "g2_br(0)");

    // Truncation sentinel: quoted values must be converged in n_max.
    const auto observables = [](const models::BuiltSystem& sys) {
        const auto rho = lindblad::steady_state(sys.liouvillian);
        const std::vector<double> tau0 = {0.0};
        models::ObservableMap out;
        out["g2_E_0"] = correlations::second_order(sys.liouvillian, rho, sys.op("E_plus"),
                                                   sys.op("E_plus"), tau0)
                            .values[0]
                            .real();
        out["g2_b_0"] =
            correlations::second_order(sys.liouvillian, rho, sys.op("b"), sys.op("b"), tau0)
                .values[0]
                .real();
        return out;
    };
    const auto conv = models::fock_convergence(
        [&](std::size_t n) {
            models::TwoLevelParams p;
            p.kappa = 1.0;
            p.g = 1.0;
            p.n_max = n;
            return models::build_two_level(p);
        },
        ctx.opts.n_max, observables);
    if (conv.max_rel_change > 0.01)
        c.result.warnings.push_back(
            "truncation not converged: raising n_max from " + std::to_string(conv.n_max) +
            " to " + std::to_string(conv.n_max_refined) + " changes quoted values by " +
            fmt(100.0 * conv.max_rel_change) + "%");
    return c.finish(std::chrono::duration<double>(Clock::now() - t0).count());
}

CriterionResult criterion_2(Context& ctx) {
    const auto t0 = Clock::now();
    CriterionBuilder c(2, "cesium quoted correlation values");
    const std::vector<double> tau0 = {0.0};
    const auto run = [&](double kappa, double g, double& g2b, double& g2br) {
        models::CesiumParams p;
        p.kappa = kappa;
        p.g = g;
        p.n_max = ctx.opts.cesium_n_max;
        const auto sys = models::build_cesium(p);
        ctx.note("cesium solve at kappa = " + fmt(kappa) + ", g = " + fmt(g) + " (dim " +
                 std::to_string(sys.layout.total_dim()) + ")");
        const auto rho = lindblad::steady_state(sys.liouvillian, ctx.opts.solver);
        g2b = correlations::second_order(sys.liouvillian, rho, sys.op("b"), sys.op("b"), tau0)
                  .values[0]
                  .real();
        g2br = correlations::second_order(sys.liouvillian, rho, sys.op("b"), sys.op("r"), tau0)
                   .values[0]
                   .real();
        ctx.steady_states.emplace_back("cesium k=" + fmt(kappa) + " g=" + fmt(g), rho);
    };
    double g2b = 0.0, g2br = 0.0;
    run(1.0, 1.0, g2b, g2br);
    c.within(g2b, 0.35, 0.02, "g2_b(0) at kappa = g = gamma");
    c.within(g2br, 1.32, 0.02, "g2_br(0) at kappa = g = gamma");
    run(2.5, 1.0, g2b, g2br);
    c.within(g2b, 0.21, 0.02, "g2_b(0) at kappa = 2.5 gamma, g = gamma");
    c.within(g2br, 1.09, 0.02, "g2_br(0) at kappa = 2.5 gamma, g = gamma");
    return c.finish(std::chrono::duration<double>(Clock::now() - t0).count());
}

CriterionResult criterion_3(Context& ctx) {
    const auto t0 = Clock::now();
    CriterionBuilder c(3, "flux resonance at Omega = Delta0 (argmax over the drive sweep)");
    constexpr double step = 0.5;
    for (double g : {0.25, 1.0, 2.5}) {
        double best_omega = 0.0, best_flux = -1.0;
        for (int k = 0; k <= 40; ++k) {
            const double omega = 15.0 + step * k;
            models::TwoLevelParams p;
            p.kappa = 2.5;
            p.g = g;
            p.omega_rabi = omega;
            p.n_max = ctx.opts.n_max;
            const auto sys = models::build_two_level(p);
            const auto rho = lindblad::steady_state(sys.liouvillian, ctx.opts.solver);
            const double flux =
                spectra::steady_flux(rho, p.kappa, sys.op("E_minus"), sys.op("E_plus"));
            if (flux > best_flux) {
                best_flux = flux;
                best_omega = omega;
            }
        }
        // The exact maximum sits within ~0.3 gamma of the resonance (cavity
        // backaction tilts the curve), so the sampled argmax is pinned to the
        // resonance point at grid resolution.
        c.check(std::abs(best_omega - 25.0) <= step + 1e-9,
                "argmax flux at Omega = " + fmt(best_omega) + " gamma for g = " + fmt(g) +
                    " gamma (expect 25 within one sweep step)");
    }
    return c.finish(std::chrono::duration<double>(Clock::now() - t0).count());
}

CriterionResult criterion_4(Context& ctx) {
    const auto t0 = Clock::now();
    CriterionBuilder c(4, "spectral structure (Mollow triplet and two-peaked cavity spectrum)");
    const auto& runs = spectrum_runs(ctx);
    const double step = runs[0].atomic.omega_grid[1] - runs[0].atomic.omega_grid[0];
    std::vector<double> central_heights;
    for (const auto& run : runs) {
        const auto atomic_peaks = find_peaks(run.atomic);
        bool triplet = atomic_peaks.size() == 3;
        if (triplet) {
            triplet = std::abs(atomic_peaks[0].omega + 25.0) <= step + 1e-9 &&
                      std::abs(atomic_peaks[1].omega) <= step + 1e-9 &&
                      std::abs(atomic_peaks[2].omega - 25.0) <= step + 1e-9;
        }
        std::string where;
        for (const auto& pk : atomic_peaks) where += fmt(pk.omega) + " ";
        c.check(triplet, "atomic peaks at { " + where + "} for g = " + fmt(run.g) +
                             " (expect -25, 0, 25 within one grid step)");

        const auto total_peaks = find_peaks(run.total);
        bool doublet = total_peaks.size() == 2;
        if (doublet)
            doublet = std::abs(total_peaks[0].omega + 25.0) <= step + 1e-9 &&
                      std::abs(total_peaks[1].omega - 25.0) <= step + 1e-9;
        where.clear();
        for (const auto& pk : total_peaks) where += fmt(pk.omega) + " ";
        c.check(doublet, "cavity-total peaks at { " + where + "} for g = " + fmt(run.g) +
                             " (expect exactly two at -25, 25)");
        central_heights.push_back(value_at(run.atomic, 0.0));
    }
    c.check(central_heights[0] > central_heights[1] && central_heights[1] > central_heights[2],
            "central-peak height strictly decreasing in g: " + fmt(central_heights[0]) + " > " +
                fmt(central_heights[1]) + " > " + fmt(central_heights[2]));
    return c.finish(std::chrono::duration<double>(Clock::now() - t0).count());
}

CriterionResult criterion_5(Context& ctx) {
    const auto t0 = Clock::now();
    CriterionBuilder c(5, "cesium cycling-transition population confinement");
    models::CesiumParams p;
    p.kappa = 2.5;
    p.g = 2.5;
    p.n_max = ctx.opts.cesium_n_max;
    const auto sys = models::build_cesium(p);
    ctx.note("cesium solve at kappa = g = 2.5 gamma (dim " +
             std::to_string(sys.layout.total_dim()) + ")");
    const auto rho = lindblad::steady_state(sys.liouvillian, ctx.opts.solver);
    c.at_least(models::population_confinement(rho, sys), 0.97, "confinement at g = kappa = 2.5 gamma");
    ctx.steady_states.emplace_back("cesium k=g=2.5", rho);
    return c.finish(std::chrono::duration<double>(Clock::now() - t0).count());
}

CriterionResult criterion_6(Context& ctx) {
    const auto t0 = Clock::now();
    CriterionBuilder c(6, "dressed-frame analytic g2 limits (kappa = 2.5 gamma, g = 0.25 gamma)");
    models::TwoLevelParams p;
    p.kappa = 2.5;
    p.g = 0.25;
    p.n_max = ctx.opts.n_max;
    const auto sys = models::build_two_level(p);
    const auto rho = lindblad::steady_state(sys.liouvillian, ctx.opts.solver);
    const std::vector<double> tau = lindblad::uniform_grid(10.0, 1001);
    const auto g2_r =
        correlations::second_order(sys.liouvillian, rho, sys.op("r"), sys.op("r"), tau);
    const auto g2_rb =
        correlations::second_order(sys.liouvillian, rho, sys.op("r"), sys.op("b"), tau);
    double worst_auto = 0.0, worst_cross = 0.0;
    for (std::size_t k = 0; k < tau.size(); ++k) {
        worst_auto = std::max(worst_auto, std::abs(g2_r.values[k].real() -
                                                   models::dressed_g2_auto(tau[k], 1.0)));
        worst_cross = std::max(worst_cross, std::abs(g2_rb.values[k].real() -
                                                     models::dressed_g2_cross(tau[k], 1.0, 2.5)));
    }
    c.at_most(worst_auto, 0.1, "max |g2_r(tau) - analytic auto| on [0, 10/gamma]");
    c.at_most(worst_cross, 0.1, "max |g2_rb(tau) - analytic cross| on [0, 10/gamma]");
    return c.finish(std::chrono::duration<double>(Clock::now() - t0).count());
}

CriterionResult criterion_7(Context& ctx) {
    const auto t0 = Clock::now();
    CriterionBuilder c(7, "Cauchy-Schwarz violations at g = kappa = gamma");
    const TwoLevelRun& run = two_level_run(ctx);
    const auto report =
        correlations::cauchy_schwarz_report(run.g2.at("b"), run.g2.at("r"), run.g2.at("br"));
    c.check(report.single_mode_1.violated,
            "single-mode bound violated: g2_b(0) = " + fmt(report.g2_auto1_zero) +
                " < 1 (margin " + fmt(report.single_mode_1.margin) + ")");
    c.check(report.two_mode[0].violated,
            "two-mode bound violated at tau = 0: g2_br(0) = " +
                fmt(run.g2.at("br").values[0].real()) + " > sqrt(g2_b(0) g2_r(0)) = " +
                fmt(std::sqrt(report.g2_auto1_zero * report.g2_auto2_zero)));
    return c.finish(std::chrono::duration<double>(Clock::now() - t0).count());
}

CriterionResult criterion_8(Context& ctx) {
    const auto t0 = Clock::now();
    CriterionBuilder c(8, "oracle equivalence on random small systems");
    double worst_action = 0.0, worst_corr1 = 0.0, worst_corr2 = 0.0, worst_steady = 0.0;
    std::mt19937_64 seeder(0xacce57);
    for (std::size_t variant = 0; variant < 5; ++variant) {
        const RandomSystem sys = make_random_system(static_cast<unsigned>(seeder()), variant);
        const auto n = static_cast<Eigen::Index>(sys.layout.total_dim());

        // (a) superoperator action vs the dense formula
        std::mt19937_64 rng(variant + 17);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        DenseMatrix x(n, n);
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < n; ++i) x(i, j) = Complex(unit(rng), unit(rng));
        const DenseMatrix via_super = sys.liouvillian.apply(x);
        const DenseMatrix via_formula = oracle_apply(sys.h, sys.channels, x);
        worst_action = std::max(
            worst_action, (via_super - via_formula).cwiseAbs().maxCoeff() /
                              std::max(1.0, via_formula.cwiseAbs().maxCoeff()));

        // (b) regression correlations vs brute-force propagator exponentials
        const auto rho = lindblad::steady_state(sys.liouvillian, ctx.opts.solver);
        const DenseMatrix big_l = oracle_dense_liouvillian(sys.h, sys.channels);
        const std::vector<double> tau = lindblad::uniform_grid(2.0, 21);

        const Operator probe = Operator(sys.layout, sys.channels[0].op.matrix());
        const auto first = correlations::first_order(sys.liouvillian, rho, probe, tau);
        const Complex mean = hilbert::expectation(rho, probe);
        const DenseMatrix x0_first = probe.matrix() * rho.matrix();
        const DenseMatrix od = DenseMatrix(probe.matrix()).adjoint();
        for (std::size_t k = 0; k < tau.size(); ++k) {
            const DenseMatrix xt = oracle_propagate(big_l, x0_first, tau[k]);
            const Complex expect = (od * xt).trace() - Complex(std::norm(mean), 0.0);
            worst_corr1 = std::max(worst_corr1, std::abs(first.values[k] - expect));
        }

        const auto second = correlations::second_order(sys.liouvillian, rho, probe, probe, tau);
        const DenseMatrix x0_second =
            probe.matrix() * rho.matrix() * DenseMatrix(probe.matrix()).adjoint().eval();
        const DenseMatrix n_op = od * DenseMatrix(probe.matrix());
        const double denom = second.normalization;
        for (std::size_t k = 0; k < tau.size(); ++k) {
            const DenseMatrix xt = oracle_propagate(big_l, x0_second, tau[k]);
            const Complex expect = (n_op * xt).trace() / denom;
            worst_corr2 = std::max(worst_corr2, std::abs(second.values[k].real() - expect.real()));
        }

        // (c) steady state vs long-time evolution
        const std::vector<double> t_grid = {0.0, 50.0, 100.0};
        const auto trajectory = lindblad::evolve(sys.liouvillian, maximally_mixed(sys.layout),
                                                 t_grid);
        worst_steady = std::max(
            worst_steady,
            (trajectory.back().matrix() - rho.matrix()).cwiseAbs().maxCoeff());
    }
    c.at_most(worst_action, 1e-12, "max Liouvillian action deviation from the dense formula");
    c.at_most(worst_corr1, 1e-8, "max first-order regression deviation from expm oracle");
    c.at_most(worst_corr2, 1e-8, "max second-order regression deviation from expm oracle");
    c.at_most(worst_steady, 1e-6, "max |steady_state - evolve(t=100/gamma)|");
    return c.finish(std::chrono::duration<double>(Clock::now() - t0).count());
}

CriterionResult criterion_9(Context&) {
    const auto t0 = Clock::now();
    CriterionBuilder c(9, "hyperfine dipole coefficient ratios");
    c.within(models::clebsch_gordan(4, 5, -4, -1), 1.0, 1e-12, "C(4,5',-4,-1)");
    c.within(models::clebsch_gordan(4, 5, 4, 1), 1.0, 1e-12, "C(4,5',4,1)");
    c.within(std::abs(models::clebsch_gordan(4, 5, -4, 1)), 0.15, 0.005, "|C(4,5',-4,+1)|");
    c.within(std::abs(models::clebsch_gordan(4, 4, -4, 1)), 0.34, 0.005, "|C(4,4',-4,+1)|");
    c.within(std::abs(models::clebsch_gordan(4, 3, -4, 1)), 0.44, 0.005, "|C(4,3',-4,+1)|");
    return c.finish(std::chrono::duration<double>(Clock::now() - t0).count());
}

CriterionResult criterion_10(Context& ctx) {
    const auto t0 = Clock::now();
    CriterionBuilder c(10, "conservation, normalization, and Parseval checks across runs");

    // Steady states collected from the other criteria.
    double trace_dev = 0.0, herm_dev = 0.0, min_eig = 0.0;
    for (const auto& [label, rho] : ctx.steady_states) {
        trace_dev = std::max(trace_dev, std::abs(rho.matrix().trace() - Complex(1.0)));
        herm_dev = std::max(herm_dev, hilbert::max_hermiticity_deviation(rho.matrix()));
        Eigen::SelfAdjointEigenSolver<DenseMatrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
        min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
    }
    c.at_most(trace_dev, 1e-8, "max steady-state |trace - 1| over " +
                                   std::to_string(ctx.steady_states.size()) + " states");
    c.at_most(herm_dev, 1e-8, "max steady-state Hermiticity deviation");
    c.at_least(min_eig, -1e-6, "min steady-state eigenvalue");

    // Trajectory invariants on an undriven-start evolution.
    {
        const TwoLevelRun& run = two_level_run(ctx);
        const auto& L = run.system.liouvillian;
        const auto excited = hilbert::basis_state(
            run.system.layout, run.system.layout.total_dim() / 2);   // |e> (x) vacuum
        const std::vector<double> t_grid = lindblad::uniform_grid(10.0, 101);
        double tr = 0.0, hm = 0.0, me = 0.0;
        lindblad::evolve_stream(L, excited.matrix(), t_grid,
                                [&](std::size_t, const DenseMatrix& state) {
                                    tr = std::max(tr, std::abs(state.trace() - Complex(1.0)));
                                    hm = std::max(hm, hilbert::max_hermiticity_deviation(state));
                                    DenseMatrix sym = 0.5 * (state + state.adjoint().eval());
                                    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(
                                        sym, Eigen::EigenvaluesOnly);
                                    me = std::min(me, es.eigenvalues().minCoeff());
                                });
        c.at_most(tr, 1e-8, "max trajectory |trace - 1|");
        c.at_most(hm, 1e-8, "max trajectory Hermiticity deviation");
        c.at_least(me, -1e-6, "min trajectory eigenvalue");
    }

    // Long-delay factorization of g2.
    {
        const TwoLevelRun& run = two_level_run(ctx);
        double worst = 0.0;
        for (const auto& [name, series] : run.g2) {
            for (std::size_t k = 0; k < series.tau_grid.size(); ++k)
                if (series.tau_grid[k] >= 20.0)
                    worst = std::max(worst, std::abs(series.values[k].real() - 1.0));
        }
        c.at_most(worst, 0.01, "max |g2(tau) - 1| for tau >= 20/gamma");
    }

    // Parseval on every acceptance spectrum.
    {
        double worst = 0.0;
        for (const auto& run : spectrum_runs(ctx))
            for (const auto* s : {&run.atomic, &run.total, &run.red, &run.blue})
                worst = std::max(worst, s->parseval_rel_err);
        c.at_most(worst, 0.01, "max Parseval relative error over acceptance spectra");
    }
    return c.finish(std::chrono::duration<double>(Clock::now() - t0).count());
}

}  // namespace

std::vector<CriterionResult> run_all(const ValidationOptions& opts, std::ostream* log) {
    Context ctx;
    ctx.opts = opts;
    ctx.log = log;
    std::vector<CriterionResult> results;
    const auto run = [&](auto&& fn, int id) {
        if (log) (*log) << "running criterion " << id << "...\n" << std::flush;
        results.push_back(fn(ctx));
        if (log)
            (*log) << (results.back().passed ? "  [PASS] " : "  [FAIL] ") << results.back().name
                   << " (" << fmt(results.back().seconds) << " s)\n"
                   << std::flush;
    };
    run(criterion_1, 1);
    run(criterion_2, 2);
    run(criterion_3, 3);
    run(criterion_4, 4);
    run(criterion_5, 5);
    run(criterion_6, 6);
    run(criterion_7, 7);
    run(criterion_8, 8);
    run(criterion_9, 9);
    run(criterion_10, 10);
    return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.passed) return false;
    return !results.empty();
}

void print_report(const std::vector<CriterionResult>& results, std::ostream& out) {
    for (const auto& r : results) {
        out << (r.passed ? "[PASS]" : "[FAIL]") << " criterion " << r.id << ": " << r.name
            << "\n";
        for (const auto& chk : r.checks)
            out << "    " << (chk.passed ? "ok   " : "FAIL ") << chk.what << "\n";
        for (const auto& w : r.warnings) out << "    warning: " << w << "\n";
    }
    std::size_t passed = 0;
    for (const auto& r : results) passed += r.passed ? 1 : 0;
    out << passed << "/" << results.size() << " criteria passed\n";
}

}  // namespace cqed::validate
