#include "scenarios.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "cqed/correlations.hpp"
#include "cqed/errors.hpp"
#include "cqed/spectra.hpp"
#include "output.hpp"

namespace simcli {

namespace {

namespace corr = cqed::correlations;
namespace spec = cqed::spectra;
using cqed::hilbert::DensityOperator;
using cqed::lindblad::SteadyStateInfo;
using cqed::models::BuiltSystem;
namespace fs = std::filesystem;

std::vector<double> tau_grid_of(double t_max, double step) {
    const auto n = static_cast<std::size_t>(std::llround(t_max / step)) + 1;
    return cqed::lindblad::uniform_grid(t_max, n);
}

struct SweepGrid {
    std::vector<double> points;
    static SweepGrid make(double lo, double hi, double step) {
        SweepGrid g;
        const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
        for (std::size_t i = 0; i < n; ++i) g.points.push_back(lo + step * static_cast<double>(i));
        return g;
    }
};

template <typename Fn>
void parallel_for(std::size_t n, unsigned thread_request, Fn&& fn) {
    unsigned threads = thread_request ? thread_request : std::thread::hardware_concurrency();
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

Json validity_json(const BuiltSystem& sys) {
    Json v;
    v["mode_resolution_ratio"] = sys.validity.mode_resolution.ratio;
    v["modes_resolved"] = sys.validity.mode_resolution.resolved;
    if (!sys.validity.suppression.empty()) {
        Json sup = Json::array();
        for (const auto& s : sys.validity.suppression)
            sup.push_back({{"f_prime", s.f_prime}, {"ratio", s.ratio}, {"suppressed", s.suppressed}});
        v["sideband_suppression"] = sup;
    }
    return v;
}

Json solver_json(const SteadyStateInfo& info) {
    return Json{{"method", info.method},
                {"residual_inf", info.residual},
                {"hermiticity_defect", info.hermiticity_defect},
                {"gmres_iterations", info.iterations}};
}

spec::SpectrumOptions spectrum_options(const ScenarioConfig& cfg) {
    spec::SpectrumOptions o;
    o.window = (cfg.window == "off") ? spec::SpectrumOptions::Window::off
                                     : spec::SpectrumOptions::Window::automatic;
    return o;
}

bool convergence_enabled(const ScenarioConfig& cfg) {
    if (cfg.convergence == "on") return true;
    if (cfg.convergence == "off") return false;
    return cfg.model != Model::cesium;   // auto: re-solving cesium is expensive
}

// Steady-state intensities used as convergence observables for any model.
cqed::models::ObservableMap intensity_observables(const ScenarioConfig& cfg,
                                                  const BuiltSystem& sys) {
    const auto rho = cqed::lindblad::steady_state(sys.liouvillian, cfg.solver);
    cqed::models::ObservableMap out;
    for (const char* name : {"r", "b", "E_plus"}) {
        const auto& op = sys.op(name);
        out[std::string("n_") + name] =
            cqed::hilbert::expectation(rho, op.adjoint() * op).real();
    }
    return out;
}

Json convergence_json(const ScenarioConfig& cfg) {
    if (!convergence_enabled(cfg)) return Json{{"checked", false}};
    const std::size_t n_max = cfg.two_level.n_max;
    const auto rep = cqed::models::fock_convergence(
        [&](std::size_t n) {
            ScenarioConfig c = cfg;
            c.two_level.n_max = c.cesium.n_max = n;
            return build_system(c);
        },
        n_max, [&](const BuiltSystem& sys) { return intensity_observables(cfg, sys); });
    Json j;
    j["checked"] = true;
    j["n_max"] = rep.n_max;
    j["n_max_refined"] = rep.n_max_refined;
    j["max_rel_change"] = rep.max_rel_change;
    Json per;
    for (const auto& [k, v] : rep.rel_change) per[k] = v;
    j["rel_change"] = per;
    j["converged"] = rep.max_rel_change <= 0.01;
    return j;
}

struct SpectrumSource {
    std::string label;        // atomic / red / blue / total
    std::string op_name;
    std::vector<double> omega_grid;
};

std::vector<SpectrumSource> spectrum_sources(const ScenarioConfig& cfg) {
    const auto& g = cfg.grids;
    const std::vector<double> atomic_grid = spec::linspace(g.omega_min, g.omega_max, g.omega_points);
    // Per-mode windows centered on -+delta0, sampled at the same density.
    const double density = (g.omega_max - g.omega_min) / static_cast<double>(g.omega_points - 1);
    const double half = 15.0;
    const auto mode_points = static_cast<std::size_t>(std::llround(2.0 * half / density)) + 1;
    const double d0 = cfg.two_level.delta0;
    return {
        {"atomic", "atomic_emission", atomic_grid},
        {"red", "r", spec::linspace(-d0 - half, -d0 + half, mode_points)},
        {"blue", "b", spec::linspace(d0 - half, d0 + half, mode_points)},
        {"total", "E_plus", atomic_grid},
    };
}

struct SpectrumSet {
    std::vector<spec::Spectrum> spectra;
    SteadyStateInfo solve_info;
};

SpectrumSet compute_spectra(const ScenarioConfig& cfg, const BuiltSystem& sys) {
    SpectrumSet out;
    const auto rho = cqed::lindblad::steady_state(sys.liouvillian, cfg.solver, &out.solve_info);
    const auto tau = tau_grid_of(cfg.grids.spectrum_tau_max, cfg.grids.spectrum_tau_step);
    for (const auto& src : spectrum_sources(cfg)) {
        const auto series = corr::first_order(sys.liouvillian, rho, sys.op(src.op_name), tau);
        out.spectra.push_back(
            spec::power_spectrum(series, src.omega_grid, src.label, spectrum_options(cfg)));
    }
    return out;
}

Json spectrum_summary_line(const spec::Spectrum& s) {
    Json peaks = Json::array();
    double vmax = 0.0;
    for (double v : s.values) vmax = std::max(vmax, v);
    for (std::size_t i = 1; i + 1 < s.values.size(); ++i)
        if (s.values[i] > s.values[i - 1] && s.values[i] >= s.values[i + 1] &&
            s.values[i] > 1e-6 * vmax)
            peaks.push_back({{"omega", s.omega_grid[i]}, {"height", s.values[i]}});
    return Json{{"source", s.source_label},
                {"peaks", peaks},
                {"c0", s.c0},
                {"integral", s.integral},
                {"parseval_rel_err", s.parseval_rel_err},
                {"windowed", s.windowed},
                {"window_alpha", s.window_alpha}};
}

void write_spectrum_files(const ScenarioConfig& cfg, const SpectrumSet& set, const fs::path& outdir,
                          const std::string& scenario, const std::string& suffix = "") {
    const auto header = provenance_header(cfg, scenario);
    for (const auto& s : set.spectra) {
        CsvWriter csv(outdir / ("spectrum_" + s.source_label + suffix + ".csv"), header,
                      {"omega_over_gamma", "P"});
        for (std::size_t i = 0; i < s.omega_grid.size(); ++i)
            csv.row({s.omega_grid[i], s.values[i]});
    }
}

// ---- scenarios ---------------------------------------------------------------

void run_spectrum_impl(const ScenarioConfig& cfg, const fs::path& outdir) {
    const BuiltSystem sys = build_system(cfg);
    const SpectrumSet set = compute_spectra(cfg, sys);
    write_spectrum_files(cfg, set, outdir, "spectrum");

    const fs::path jsonl = outdir / "spectrum_summary.jsonl";
    if (fs::exists(jsonl)) fs::remove(jsonl);
    for (const auto& s : set.spectra) append_jsonl(jsonl, spectrum_summary_line(s));

    Json summary;
    summary["scenario"] = "spectrum";
    summary["config"] = config_json(cfg);
    summary["validity"] = validity_json(sys);
    summary["solver"] = solver_json(set.solve_info);
    Json sources = Json::array();
    for (const auto& s : set.spectra) sources.push_back(spectrum_summary_line(s));
    summary["sources"] = sources;
    summary["convergence"] = convergence_json(cfg);
    write_json(outdir / "summary.json", summary);
}

void run_flux_sweep_impl(const ScenarioConfig& cfg, const fs::path& outdir) {
    const SweepGrid sweep =
        SweepGrid::make(cfg.grids.sweep_min, cfg.grids.sweep_max, cfg.grids.sweep_step);
    const std::size_t n = sweep.points.size();
    std::vector<double> flux(n, std::nan("")), residual(n, std::nan(""));
    std::vector<std::string> errors(n);

    parallel_for(n, cfg.threads, [&](std::size_t i) {
        try {
            ScenarioConfig c = cfg;
            c.two_level.omega_rabi = c.cesium.omega_rabi = sweep.points[i];
            const BuiltSystem sys = build_system(c);
            SteadyStateInfo info;
            const auto rho = cqed::lindblad::steady_state(sys.liouvillian, cfg.solver, &info);
            flux[i] = spec::steady_flux(rho, c.two_level.kappa, sys.op("E_minus"), sys.op("E_plus"));
            residual[i] = info.residual;
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });

    const auto header = provenance_header(cfg, "flux-sweep");
    CsvWriter csv(outdir / "flux_sweep.csv", header,
                  {"omega_rabi_over_gamma", "flux", "steady_residual_inf"});
    for (std::size_t i = 0; i < n; ++i) csv.row({sweep.points[i], flux[i], residual[i]});

    Json summary;
    summary["scenario"] = "flux-sweep";
    summary["config"] = config_json(cfg);
    std::size_t argmax = 0;
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::isnan(flux[i])) continue;
        if (!any || flux[i] > flux[argmax]) argmax = i, any = true;
    }
    if (any) {
        summary["argmax_omega_rabi"] = sweep.points[argmax];
        summary["max_flux"] = flux[argmax];
    }
    Json errs = Json::array();
    for (std::size_t i = 0; i < n; ++i)
        if (!errors[i].empty())
            errs.push_back({{"omega_rabi", sweep.points[i]}, {"error", errors[i]}});
    summary["point_failures"] = errs;
    summary["convergence"] = convergence_json(cfg);
    write_json(outdir / "summary.json", summary);
}

struct G2Set {
    std::vector<double> tau;
    corr::CorrelationSeries e, b, r, br, rb;
    SteadyStateInfo solve_info;
};

G2Set compute_g2_series(const ScenarioConfig& cfg, const BuiltSystem& sys) {
    G2Set out;
    const auto rho = cqed::lindblad::steady_state(sys.liouvillian, cfg.solver, &out.solve_info);
    out.tau = tau_grid_of(cfg.grids.tau_max, cfg.grids.tau_step);
    const auto& L = sys.liouvillian;
    out.e = corr::second_order(L, rho, sys.op("E_plus"), sys.op("E_plus"), out.tau);
    out.b = corr::second_order(L, rho, sys.op("b"), sys.op("b"), out.tau);
    out.r = corr::second_order(L, rho, sys.op("r"), sys.op("r"), out.tau);
    out.br = corr::second_order(L, rho, sys.op("b"), sys.op("r"), out.tau);
    out.rb = corr::second_order(L, rho, sys.op("r"), sys.op("b"), out.tau);
    return out;
}

void run_g2_tau(const ScenarioConfig& cfg, const fs::path& outdir) {
    const BuiltSystem sys = build_system(cfg);
    const G2Set set = compute_g2_series(cfg, sys);
    const auto header = provenance_header(cfg, "g2");

    const bool dressed = cfg.model == Model::dressed;
    std::vector<std::string> columns = {"tau_gamma", "g2_E", "g2_b", "g2_r", "g2_br", "g2_rb"};
    if (dressed) {
        columns.push_back("analytic_auto");
        columns.push_back("analytic_cross");
    }
    CsvWriter csv(outdir / "g2_tau.csv", header, columns);
    for (std::size_t k = 0; k < set.tau.size(); ++k) {
        std::vector<double> row = {set.tau[k],
                                   set.e.values[k].real(),
                                   set.b.values[k].real(),
                                   set.r.values[k].real(),
                                   set.br.values[k].real(),
                                   set.rb.values[k].real()};
        if (dressed) {
            row.push_back(cqed::models::dressed_g2_auto(set.tau[k], 1.0));
            row.push_back(
                cqed::models::dressed_g2_cross(set.tau[k], 1.0, cfg.two_level.kappa));
        }
        csv.row(row);
    }

    const auto report = corr::cauchy_schwarz_report(set.b, set.r, set.br);
    CsvWriter cs(outdir / "cs_report.csv", header,
                 {"tau_gamma", "temporal_margin_b", "temporal_margin_r", "two_mode_margin_br"});
    for (std::size_t k = 0; k < set.tau.size(); ++k)
        cs.row({set.tau[k], report.temporal_1[k].margin, report.temporal_2[k].margin,
                report.two_mode[k].margin});

    Json summary;
    summary["scenario"] = "g2";
    summary["mode"] = "tau";
    summary["config"] = config_json(cfg);
    summary["validity"] = validity_json(sys);
    summary["solver"] = solver_json(set.solve_info);
    summary["g2_zero"] = {{"E", set.e.values[0].real()},
                          {"b", set.b.values[0].real()},
                          {"r", set.r.values[0].real()},
                          {"br", set.br.values[0].real()},
                          {"rb", set.rb.values[0].real()}};
    summary["cauchy_schwarz"] = {
        {"single_mode_b_violated", report.single_mode_1.violated},
        {"single_mode_b_margin", report.single_mode_1.margin},
        {"single_mode_r_violated", report.single_mode_2.violated},
        {"single_mode_r_margin", report.single_mode_2.margin},
        {"two_mode_violated_at_zero", report.two_mode[0].violated},
        {"two_mode_margin_at_zero", report.two_mode[0].margin},
        {"violations", report.violation_count()}};
    summary["max_imag_residue"] =
        std::max({set.e.max_imag_residue, set.b.max_imag_residue, set.r.max_imag_residue,
                  set.br.max_imag_residue, set.rb.max_imag_residue});
    summary["convergence"] = convergence_json(cfg);
    write_json(outdir / "summary.json", summary);
}

void run_g2_kappa_sweep(const ScenarioConfig& cfg, const fs::path& outdir) {
    const SweepGrid sweep = SweepGrid::make(cfg.grids.kappa_sweep_min, cfg.grids.kappa_sweep_max,
                                            cfg.grids.kappa_sweep_step);
    const std::size_t n = sweep.points.size();
    struct Point {
        double g2e = std::nan(""), g2b = std::nan(""), g2r = std::nan("");
        double g2br = std::nan(""), g2rb = std::nan("");
        std::string error;
    };
    std::vector<Point> pts(n);

    parallel_for(n, cfg.threads, [&](std::size_t i) {
        try {
            ScenarioConfig c = cfg;
            c.two_level.kappa = c.cesium.kappa = sweep.points[i];
            const BuiltSystem sys = build_system(c);
            const auto rho = cqed::lindblad::steady_state(sys.liouvillian, cfg.solver);
            const std::vector<double> tau0 = {0.0};
            const auto& L = sys.liouvillian;
            const auto g2 = [&](const char* a, const char* b) {
                return corr::second_order(L, rho, sys.op(a), sys.op(b), tau0).values[0].real();
            };
            pts[i].g2e = g2("E_plus", "E_plus");
            pts[i].g2b = g2("b", "b");
            pts[i].g2r = g2("r", "r");
            pts[i].g2br = g2("b", "r");
            pts[i].g2rb = g2("r", "b");
        } catch (const cqed::UndefinedCorrelationError& e) {
            pts[i].error = std::string("undefined: ") + e.what();
        } catch (const std::exception& e) {
            pts[i].error = e.what();
        }
    });

    const auto header = provenance_header(cfg, "g2");
    CsvWriter csv(outdir / "g2_vs_kappa.csv", header,
                  {"kappa_over_gamma", "g2_E_0", "g2_b_0", "g2_r_0", "g2_br_0", "g2_rb_0",
                   "single_mode_violated", "two_mode_violated"});
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = pts[i];
        const double single = (!std::isnan(p.g2b) && p.g2b < 1.0) ? 1.0 : 0.0;
        const double cross_bound = std::sqrt(p.g2b * p.g2r);
        const double two = (!std::isnan(p.g2br) && p.g2br > cross_bound) ? 1.0 : 0.0;
        csv.row({sweep.points[i], p.g2e, p.g2b, p.g2r, p.g2br, p.g2rb, single, two});
    }

    Json summary;
    summary["scenario"] = "g2";
    summary["mode"] = "kappa-sweep";
    summary["config"] = config_json(cfg);
    Json errs = Json::array();
    for (std::size_t i = 0; i < n; ++i)
        if (!pts[i].error.empty())
            errs.push_back({{"kappa", sweep.points[i]}, {"error", pts[i].error}});
    summary["point_failures"] = errs;
    summary["convergence"] = convergence_json(cfg);
    write_json(outdir / "summary.json", summary);
}

void run_cs_bounds_impl(const ScenarioConfig& cfg, const fs::path& outdir) {
    const BuiltSystem sys = build_system(cfg);
    const G2Set set = compute_g2_series(cfg, sys);
    const auto rep_br = corr::cauchy_schwarz_report(set.b, set.r, set.br);
    const auto rep_rb = corr::cauchy_schwarz_report(set.b, set.r, set.rb);

    const auto header = provenance_header(cfg, "cs-bounds");
    CsvWriter csv(outdir / "cs_bounds.csv", header,
                  {"tau_gamma", "g2_b", "g2_r", "g2_br", "g2_rb", "two_mode_bound",
                   "two_mode_margin_br", "two_mode_margin_rb", "temporal_margin_b",
                   "temporal_margin_r"});
    const double bound = std::sqrt(set.b.values[0].real() * set.r.values[0].real());
    for (std::size_t k = 0; k < set.tau.size(); ++k)
        csv.row({set.tau[k], set.b.values[k].real(), set.r.values[k].real(),
                 set.br.values[k].real(), set.rb.values[k].real(), bound,
                 rep_br.two_mode[k].margin, rep_rb.two_mode[k].margin,
                 rep_br.temporal_1[k].margin, rep_br.temporal_2[k].margin});

    Json summary;
    summary["scenario"] = "cs-bounds";
    summary["config"] = config_json(cfg);
    summary["validity"] = validity_json(sys);
    summary["solver"] = solver_json(set.solve_info);
    summary["g2_b_zero"] = set.b.values[0].real();
    summary["g2_r_zero"] = set.r.values[0].real();
    summary["two_mode_bound"] = bound;
    summary["single_mode_violated"] = rep_br.single_mode_1.violated;
    summary["two_mode_br_violated_at_zero"] = rep_br.two_mode[0].violated;
    summary["two_mode_rb_violated_at_zero"] = rep_rb.two_mode[0].violated;
    summary["violations_br"] = rep_br.violation_count();
    summary["violations_rb"] = rep_rb.violation_count();
    write_json(outdir / "summary.json", summary);
}

// ---- figures -----------------------------------------------------------------

std::string num_tag(double v) {
    std::string s = std::to_string(v);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') s.pop_back();
    for (auto& c : s)
        if (c == '.') c = 'p';
    return s;
}

void figure_fig1(const ScenarioConfig& base, const fs::path& outdir) {
    // Schematic transmission of two cavity resonances (pair of Lorentzians of
    // halfwidth kappa), plus bare-atom power spectra at Omega = {0.5, 1, 1.5} delta0.
    ScenarioConfig cfg = base;
    const double d0 = cfg.two_level.delta0;
    const double kappa = cfg.two_level.kappa;
    auto header = provenance_header(cfg, "figure-fig1");
    header.push_back("# transmission curve is schematic: unit-peak Lorentzian pair of halfwidth kappa");
    {
        const auto omega = spec::linspace(-2.0 * d0, 2.0 * d0, 2001);
        CsvWriter csv(outdir / "fig1b_transmission.csv", header, {"omega_over_gamma", "T"});
        for (double w : omega) {
            const double t = (kappa * kappa) / ((w - d0) * (w - d0) + kappa * kappa) +
                             (kappa * kappa) / ((w + d0) * (w + d0) + kappa * kappa);
            csv.row({w, t});
        }
    }
    for (double scale : {0.5, 1.0, 1.5}) {
        ScenarioConfig c = cfg;
        c.model = Model::two_level;
        c.two_level.g = 0.0;   // bare driven atom; the empty modes only pad the space
        c.two_level.n_max = 1;
        c.two_level.omega_rabi = scale * d0;
        const BuiltSystem sys = build_system(c);
        const auto rho = cqed::lindblad::steady_state(sys.liouvillian, c.solver);
        const auto tau = tau_grid_of(c.grids.spectrum_tau_max, c.grids.spectrum_tau_step);
        const auto series = corr::first_order(sys.liouvillian, rho, sys.op("sigma_minus"), tau);
        const auto s = spec::power_spectrum(series, spec::linspace(-2.0 * d0, 2.0 * d0, 2001),
                                            "atomic", spectrum_options(c));
        CsvWriter csv(outdir / ("fig1b_atomic_omega" + num_tag(scale) + "delta0.csv"), header,
                      {"omega_over_gamma", "P"});
        for (std::size_t i = 0; i < s.omega_grid.size(); ++i) csv.row({s.omega_grid[i], s.values[i]});
    }
}

void figure_fig2(const ScenarioConfig& base, const fs::path& outdir) {
    for (double g : {0.25, 1.0, 2.5}) {
        ScenarioConfig c = base;
        c.two_level.kappa = c.cesium.kappa = 2.5;
        c.two_level.g = c.cesium.g = g;
        const std::string tag = "_g" + num_tag(g);
        {
            // flux sweep panel
            ScenarioConfig cc = c;
            const fs::path tmp = outdir;
            const SweepGrid sweep =
                SweepGrid::make(cc.grids.sweep_min, cc.grids.sweep_max, cc.grids.sweep_step);
            std::vector<double> flux(sweep.points.size(), std::nan(""));
            parallel_for(sweep.points.size(), cc.threads, [&](std::size_t i) {
                try {
                    ScenarioConfig cp = cc;
                    cp.two_level.omega_rabi = cp.cesium.omega_rabi = sweep.points[i];
                    const BuiltSystem sys = build_system(cp);
                    const auto rho = cqed::lindblad::steady_state(sys.liouvillian, cp.solver);
                    flux[i] = spec::steady_flux(rho, cp.two_level.kappa, sys.op("E_minus"),
                                                sys.op("E_plus"));
                } catch (const std::exception&) {
                    // recorded as a nan row; the panel continues
                }
            });
            CsvWriter csv(tmp / ("fig2a_flux" + tag + ".csv"), provenance_header(c, "figure-fig2"),
                          {"omega_rabi_over_gamma", "flux"});
            for (std::size_t i = 0; i < sweep.points.size(); ++i)
                csv.row({sweep.points[i], flux[i]});
        }
        const BuiltSystem sys = build_system(c);
        const SpectrumSet set = compute_spectra(c, sys);
        write_spectrum_files(c, set, outdir, "figure-fig2", tag);
    }
}

void figure_fig3(const ScenarioConfig& base, const fs::path& outdir) {
    for (double g : {0.25, 1.0, 2.5}) {
        ScenarioConfig c = base;
        c.two_level.g = c.cesium.g = g;
        c.g2_mode = "kappa-sweep";
        const fs::path sub = outdir / ("fig3_g" + num_tag(g));
        fs::create_directories(sub);
        run_g2_kappa_sweep(c, sub);
        fs::rename(sub / "g2_vs_kappa.csv", outdir / ("fig3_g" + num_tag(g) + ".csv"));
        fs::remove(sub / "summary.json");
        fs::remove(sub);
    }
}

void figure_fig4(const ScenarioConfig& base, const fs::path& outdir) {
    for (double kappa : {1.0, 2.5}) {
        for (double g : {0.25, 1.0, 2.5}) {
            ScenarioConfig c = base;
            c.two_level.kappa = c.cesium.kappa = kappa;
            c.two_level.g = c.cesium.g = g;
            const BuiltSystem sys = build_system(c);
            const G2Set set = compute_g2_series(c, sys);
            CsvWriter csv(outdir / ("fig4_k" + num_tag(kappa) + "_g" + num_tag(g) + ".csv"),
                          provenance_header(c, "figure-fig4"),
                          {"tau_gamma", "g2_b", "g2_r", "g2_br", "g2_rb"});
            for (std::size_t k = 0; k < set.tau.size(); ++k)
                csv.row({set.tau[k], set.b.values[k].real(), set.r.values[k].real(),
                         set.br.values[k].real(), set.rb.values[k].real()});
        }
    }
}

void figure_fig6(const ScenarioConfig& base, const fs::path& outdir) {
    for (double g : {0.25, 1.0, 2.5}) {
        ScenarioConfig c = base;
        c.model = Model::cesium;
        c.two_level.kappa = c.cesium.kappa = 2.5;
        c.two_level.g = c.cesium.g = g;
        const BuiltSystem sys = build_system(c);
        const SpectrumSet set = compute_spectra(c, sys);
        write_spectrum_files(c, set, outdir, "figure-fig6", "_g" + num_tag(g));
    }
}

void figure_fig7(const ScenarioConfig& base, const fs::path& outdir) {
    for (double kappa : {1.0, 2.5}) {
        ScenarioConfig c = base;
        c.model = Model::cesium;
        c.two_level.kappa = c.cesium.kappa = kappa;
        c.two_level.g = c.cesium.g = 1.0;
        const BuiltSystem sys = build_system(c);
        const G2Set set = compute_g2_series(c, sys);
        CsvWriter csv(outdir / ("fig7_k" + num_tag(kappa) + ".csv"),
                      provenance_header(c, "figure-fig7"),
                      {"tau_gamma", "g2_b", "g2_r", "g2_br", "g2_rb"});
        for (std::size_t k = 0; k < set.tau.size(); ++k)
            csv.row({set.tau[k], set.b.values[k].real(), set.r.values[k].real(),
                     set.br.values[k].real(), set.rb.values[k].real()});
    }
}

}  // namespace

void run_spectrum(const ScenarioConfig& cfg, const fs::path& outdir) {
    fs::create_directories(outdir);
    run_spectrum_impl(cfg, outdir);
}

void run_flux_sweep(const ScenarioConfig& cfg, const fs::path& outdir) {
    fs::create_directories(outdir);
    run_flux_sweep_impl(cfg, outdir);
}

void run_g2(const ScenarioConfig& cfg, const fs::path& outdir) {
    fs::create_directories(outdir);
    if (cfg.g2_mode == "kappa-sweep")
        run_g2_kappa_sweep(cfg, outdir);
    else
        run_g2_tau(cfg, outdir);
}

void run_cs_bounds(const ScenarioConfig& cfg, const fs::path& outdir) {
    fs::create_directories(outdir);
    run_cs_bounds_impl(cfg, outdir);
}

void run_figure(const ScenarioConfig& cfg, const std::string& which, const fs::path& outdir) {
    fs::create_directories(outdir);
    if (which == "fig1") figure_fig1(cfg, outdir);
    else if (which == "fig2") figure_fig2(cfg, outdir);
    else if (which == "fig3") figure_fig3(cfg, outdir);
    else if (which == "fig4") figure_fig4(cfg, outdir);
    else if (which == "fig6") figure_fig6(cfg, outdir);
    else if (which == "fig7") figure_fig7(cfg, outdir);
    else
        throw ConfigError("figure: unknown figure '" + which +
                          "' (expected fig1, fig2, fig3, fig4, fig6, or fig7)");

    Json summary;
    summary["scenario"] = "figure";
    summary["figure"] = which;
    summary["config"] = config_json(cfg);
    Json files = Json::array();
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(outdir))
        if (entry.path().extension() == ".csv") names.push_back(entry.path().filename().string());
    std::sort(names.begin(), names.end());
    for (const auto& n : names) files.push_back(n);
    summary["files"] = files;
    write_json(outdir / "summary.json", summary);
}

}  // namespace simcli
