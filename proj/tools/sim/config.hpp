// config.hpp — Flat key = value scenario configuration with command-line
// overrides, mapped onto model parameters and grid specifications.

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cqed/lindblad.hpp"
#include "cqed/models.hpp"

namespace simcli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Model { two_level, dressed, cesium };

std::string model_name(Model m);

struct GridSpec {
    double tau_max = 10.0;
    double tau_step = 0.01;
    double spectrum_tau_max = 40.0;
    double spectrum_tau_step = 0.005;
    double omega_min = -40.0;
    double omega_max = 40.0;
    std::size_t omega_points = 4001;
    double sweep_min = 15.0;   // flux sweep over omega_rabi
    double sweep_max = 35.0;
    double sweep_step = 0.5;
    double kappa_sweep_min = 0.25;
    double kappa_sweep_max = 5.0;
    double kappa_sweep_step = 0.25;
};

struct ScenarioConfig {
    Model model = Model::two_level;

    // Rates in units of gamma. For the cesium model g is the circular-basis
    // coupling; everything else is shared.
    cqed::models::TwoLevelParams two_level;
    cqed::models::CesiumParams cesium;

    GridSpec grids;
    std::string g2_mode = "tau";          // "tau" or "kappa-sweep"
    std::string window = "auto";          // spectrum windowing: "auto" or "off"
    std::string convergence = "auto";     // "auto", "on", "off"
    cqed::lindblad::SteadyStateOptions solver;
    std::string solver_mode = "auto";     // recorded for provenance
    unsigned threads = 0;                 // 0: hardware concurrency
    bool display_mhz = false;

    // Raw key/value pairs in application order, for output provenance.
    std::vector<std::pair<std::string, std::string>> provenance;
};

// Parse a config file (may be empty path: defaults only), then apply
// `--set key=value` overrides in order. Throws ConfigError.
ScenarioConfig load_config(const std::string& path, const std::vector<std::string>& overrides);

// Rebuild the configured system; for sweeps, callers adjust the returned
// params before building.
cqed::models::BuiltSystem build_system(const ScenarioConfig& cfg);
cqed::models::BuiltSystem build_system_at(const ScenarioConfig& cfg, double kappa, double g,
                                          double omega_rabi, std::size_t n_max);

}  // namespace simcli
