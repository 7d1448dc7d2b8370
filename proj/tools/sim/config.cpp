#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <fstream>
#include <sstream>

namespace simcli {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double parsed = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' expects a number, got '" + v + "'");
    }
}

std::size_t to_size(const std::string& key, const std::string& v) {
    const double d = to_double(key, v);
    if (d < 0 || d != std::floor(d))
        throw ConfigError("config: key '" + key + "' expects a non-negative integer, got '" + v + "'");
    return static_cast<std::size_t>(d);
}

void apply_key(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
    auto& tl = cfg.two_level;
    auto& cs = cfg.cesium;
    if (key == "model") {
        if (value == "two-level") cfg.model = Model::two_level;
        else if (value == "dressed") cfg.model = Model::dressed;
        else if (value == "cesium") cfg.model = Model::cesium;
        else throw ConfigError("config: unknown model '" + value + "'");
    } else if (key == "gamma") {
        const double g = to_double(key, value);
        if (g != 1.0)
            throw ConfigError("config: gamma is the unit of all rates and must stay 1");
    } else if (key == "kappa") {
        tl.kappa = cs.kappa = to_double(key, value);
    } else if (key == "g") {
        tl.g = cs.g = to_double(key, value);
    } else if (key == "omega_rabi") {
        tl.omega_rabi = cs.omega_rabi = to_double(key, value);
    } else if (key == "delta0") {
        tl.delta0 = cs.delta0 = to_double(key, value);
    } else if (key == "n_max") {
        tl.n_max = cs.n_max = to_size(key, value);
    } else if (key == "ground_splitting") {
        cs.ground_splitting = to_double(key, value);
    } else if (key == "detuning_2p") {
        cs.excited_detunings[2] = to_double(key, value);
    } else if (key == "detuning_3p") {
        cs.excited_detunings[3] = to_double(key, value);
    } else if (key == "detuning_4p") {
        cs.excited_detunings[4] = to_double(key, value);
    } else if (key == "manifolds") {
        std::set<cqed::models::Manifold> set;
        std::stringstream ss(value);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            tok = trim(tok);
            if (tok.empty()) continue;
            try {
                set.insert(cqed::models::parse_manifold(tok));
            } catch (const std::exception&) {
                throw ConfigError("config: unknown manifold '" + tok +
                                  "' (use 3, 4, 2p, 3p, 4p, 5p)");
            }
        }
        if (set.empty()) throw ConfigError("config: manifolds must not be empty");
        cs.included_manifolds = std::move(set);
    } else if (key == "drive_q") {
        const double q = to_double(key, value);
        if (q != -1.0 && q != 1.0) throw ConfigError("config: drive_q must be -1 or +1");
        cs.drive_polarization = static_cast<int>(q);
    } else if (key == "tau_max") {
        cfg.grids.tau_max = to_double(key, value);
    } else if (key == "tau_step") {
        cfg.grids.tau_step = to_double(key, value);
    } else if (key == "spectrum_tau_max") {
        cfg.grids.spectrum_tau_max = to_double(key, value);
    } else if (key == "spectrum_tau_step") {
        cfg.grids.spectrum_tau_step = to_double(key, value);
    } else if (key == "omega_min") {
        cfg.grids.omega_min = to_double(key, value);
    } else if (key == "omega_max") {
        cfg.grids.omega_max = to_double(key, value);
    } else if (key == "omega_points") {
        cfg.grids.omega_points = to_size(key, value);
    } else if (key == "sweep_min") {
        cfg.grids.sweep_min = to_double(key, value);
    } else if (key == "sweep_max") {
        cfg.grids.sweep_max = to_double(key, value);
    } else if (key == "sweep_step") {
        cfg.grids.sweep_step = to_double(key, value);
    } else if (key == "kappa_sweep_min") {
        cfg.grids.kappa_sweep_min = to_double(key, value);
    } else if (key == "kappa_sweep_max") {
        cfg.grids.kappa_sweep_max = to_double(key, value);
    } else if (key == "kappa_sweep_step") {
        cfg.grids.kappa_sweep_step = to_double(key, value);
    } else if (key == "g2_mode") {
        if (value != "tau" && value != "kappa-sweep")
            throw ConfigError("config: g2_mode must be 'tau' or 'kappa-sweep'");
        cfg.g2_mode = value;
    } else if (key == "window") {
        if (value != "auto" && value != "off")
            throw ConfigError("config: window must be 'auto' or 'off'");
        cfg.window = value;
    } else if (key == "convergence_check") {
        if (value != "auto" && value != "on" && value != "off")
            throw ConfigError("config: convergence_check must be 'auto', 'on', or 'off'");
        cfg.convergence = value;
    } else if (key == "solver") {
        using Method = cqed::lindblad::SteadyStateOptions::Method;
        if (value == "auto") cfg.solver.method = Method::automatic;
        else if (value == "direct") cfg.solver.method = Method::direct;
        else if (value == "iterative") cfg.solver.method = Method::iterative;
        else throw ConfigError("config: solver must be 'auto', 'direct', or 'iterative'");
        cfg.solver_mode = value;
    } else if (key == "threads") {
        cfg.threads = static_cast<unsigned>(to_size(key, value));
    } else {
        throw ConfigError("config: unknown key '" + key + "'");
    }
    cfg.provenance.emplace_back(key, value);
}

void validate(const ScenarioConfig& cfg) {
    const auto& tl = cfg.two_level;
    if (!(tl.kappa > 0.0)) throw ConfigError("config: kappa must be > 0");
    if (tl.g < 0.0) throw ConfigError("config: g must be >= 0");
    if (tl.omega_rabi < 0.0) throw ConfigError("config: omega_rabi must be >= 0");
    if (!(tl.delta0 > 0.0)) throw ConfigError("config: delta0 must be > 0");
    if (tl.n_max < 1) throw ConfigError("config: n_max must be >= 1");
    if (!(cfg.grids.tau_max > 0.0) || !(cfg.grids.tau_step > 0.0) ||
        cfg.grids.tau_step > cfg.grids.tau_max)
        throw ConfigError("config: tau grid is malformed");
    if (!(cfg.grids.spectrum_tau_max > 0.0) || !(cfg.grids.spectrum_tau_step > 0.0))
        throw ConfigError("config: spectrum tau grid is malformed");
    if (!(cfg.grids.omega_max > cfg.grids.omega_min) || cfg.grids.omega_points < 2)
        throw ConfigError("config: omega grid is malformed");
    if (!(cfg.grids.sweep_max > cfg.grids.sweep_min) || !(cfg.grids.sweep_step > 0.0))
        throw ConfigError("config: sweep grid is malformed");
    if (!(cfg.grids.kappa_sweep_max > cfg.grids.kappa_sweep_min) ||
        !(cfg.grids.kappa_sweep_step > 0.0) || cfg.grids.kappa_sweep_min <= 0.0)
        throw ConfigError("config: kappa sweep grid is malformed");
}

}  // namespace

std::string model_name(Model m) {
    switch (m) {
        case Model::two_level: return "two-level";
        case Model::dressed: return "dressed";
        case Model::cesium: return "cesium";
    }
    return "?";
}

ScenarioConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
    ScenarioConfig cfg;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw ConfigError("config: cannot open '" + path + "'");
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config: " + path + ":" + std::to_string(lineno) +
                                  ": expected 'key = value'");
            apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        }
    }
    for (const auto& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: --set expects key=value, got '" + ov + "'");
        apply_key(cfg, trim(ov.substr(0, eq)), trim(ov.substr(eq + 1)));
    }
    validate(cfg);
    return cfg;
}

cqed::models::BuiltSystem build_system(const ScenarioConfig& cfg) {
    switch (cfg.model) {
        case Model::two_level: return cqed::models::build_two_level(cfg.two_level);
        case Model::dressed: return cqed::models::build_dressed_secular(cfg.two_level);
        case Model::cesium: return cqed::models::build_cesium(cfg.cesium);
    }
    throw ConfigError("config: bad model");
}

cqed::models::BuiltSystem build_system_at(const ScenarioConfig& cfg, double kappa, double g,
                                          double omega_rabi, std::size_t n_max) {
    ScenarioConfig c = cfg;
    c.two_level.kappa = c.cesium.kappa = kappa;
    c.two_level.g = c.cesium.g = g;
    c.two_level.omega_rabi = c.cesium.omega_rabi = omega_rabi;
    c.two_level.n_max = c.cesium.n_max = n_max;
    return build_system(c);
}

}  // namespace simcli
