// sim — scenario runner: steady-state spectra, fluxes, photon correlations,
// classical-bound reports, figure data sets, and the validation suite.
//
// Exit codes: 0 success, 1 configuration error, 2 solver failure,
// 3 validation failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "cqed/errors.hpp"
#include "cqed/validate.hpp"
#include "cqed/version.hpp"
#include "output.hpp"
#include "scenarios.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir;
    bool mhz = false;
    unsigned threads = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool out_required = true) {
    cmd->add_option("--config", args.config_path, "flat key = value configuration file");
    cmd->add_option("--set", args.overrides, "override a config key, e.g. --set kappa=2.5")
        ->take_all();
    auto* out = cmd->add_option("--out", args.out_dir, "output directory");
    if (out_required) out->required();
    cmd->add_flag("--mhz", args.mhz, "annotate outputs with MHz values (gamma/2pi = 5.2 MHz)");
    cmd->add_option("--threads", args.threads, "worker threads for sweeps (0 = hardware)");
}

simcli::ScenarioConfig load(const CommonArgs& args) {
    auto cfg = simcli::load_config(args.config_path, args.overrides);
    cfg.display_mhz = args.mhz;
    if (args.threads) cfg.threads = args.threads;
    return cfg;
}

int run_validate(const CommonArgs& args) {
    const auto cfg = load(args);   // config errors (exit 1) surface before the run
    cqed::validate::ValidationOptions opts;
    opts.n_max = cfg.two_level.n_max;
    opts.cesium_n_max = cfg.cesium.n_max;
    opts.solver = cfg.solver;
    const auto results = cqed::validate::run_all(opts, &std::cerr);
    cqed::validate::print_report(results, std::cout);

    if (!args.out_dir.empty()) {
        std::filesystem::create_directories(args.out_dir);
        simcli::Json report;
        report["scenario"] = "validate";
        report["config"] = simcli::config_json(cfg);
        simcli::Json criteria = simcli::Json::array();
        for (const auto& r : results) {
            simcli::Json c;
            c["id"] = r.id;
            c["name"] = r.name;
            c["passed"] = r.passed;
            simcli::Json checks = simcli::Json::array();
            for (const auto& chk : r.checks)
                checks.push_back({{"what", chk.what}, {"passed", chk.passed}});
            c["checks"] = checks;
            c["warnings"] = r.warnings;
            c["seconds"] = r.seconds;
            criteria.push_back(c);
        }
        report["criteria"] = criteria;
        report["all_passed"] = cqed::validate::all_passed(results);
        simcli::write_json(std::filesystem::path(args.out_dir) / "report.json", report);
    }
    return cqed::validate::all_passed(results) ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cavity QED simulator: two spectrally-separated cavity modes coupled to a "
                 "strongly-driven atom"};
    app.set_version_flag("--version", std::string("sim ") + cqed::kVersion);
    app.require_subcommand(1);

    CommonArgs spectrum_args, flux_args, g2_args, cs_args, fig_args, val_args;
    std::string figure_name;

    auto* spectrum = app.add_subcommand("spectrum", "steady-state power spectra per source");
    add_common(spectrum, spectrum_args);
    auto* flux = app.add_subcommand("flux-sweep", "steady-state cavity flux vs drive strength");
    add_common(flux, flux_args);
    auto* g2 = app.add_subcommand("g2", "second-order auto/cross correlations");
    add_common(g2, g2_args);
    auto* cs = app.add_subcommand("cs-bounds", "Cauchy-Schwarz classical-bound report");
    add_common(cs, cs_args);
    auto* figure = app.add_subcommand("figure", "emit the data set behind a given figure");
    figure->add_option("name", figure_name, "fig1, fig2, fig3, fig4, fig6, or fig7")->required();
    add_common(figure, fig_args);
    auto* validate = app.add_subcommand("validate", "run the acceptance criteria");
    add_common(validate, val_args, /*out_required=*/false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (spectrum->parsed()) simcli::run_spectrum(load(spectrum_args), spectrum_args.out_dir);
        else if (flux->parsed()) simcli::run_flux_sweep(load(flux_args), flux_args.out_dir);
        else if (g2->parsed()) simcli::run_g2(load(g2_args), g2_args.out_dir);
        else if (cs->parsed()) simcli::run_cs_bounds(load(cs_args), cs_args.out_dir);
        else if (figure->parsed()) simcli::run_figure(load(fig_args), figure_name, fig_args.out_dir);
        else if (validate->parsed()) return run_validate(val_args);
    } catch (const simcli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const cqed::SolverError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
