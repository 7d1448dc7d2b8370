#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "config.hpp"
#include "output.hpp"
#include "scenarios.hpp"

using simcli::ConfigError;
using simcli::load_config;
using simcli::Model;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir(const std::string& name) : path(std::filesystem::temp_directory_path() / name) {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("config defaults and overrides") {
    const auto cfg = load_config("", {});
    CHECK(cfg.model == Model::two_level);
    CHECK(cfg.two_level.kappa == 2.5);
    CHECK(cfg.two_level.delta0 == 25.0);
    CHECK(cfg.two_level.n_max == 3);

    const auto cs = load_config("", {"model=cesium", "kappa=1.0", "g=1.0"});
    CHECK(cs.model == Model::cesium);
    CHECK(cs.cesium.kappa == 1.0);
    CHECK(cs.cesium.included_manifolds == cqed::models::CesiumParams::default_manifolds());
}

TEST_CASE("config file parsing with comments") {
    TempDir dir("simcli_cfg_test");
    const auto path = dir.path / "run.cfg";
    {
        std::ofstream out(path);
        out << "# a comment line\n"
            << "model = dressed\n"
            << "kappa = 2.5   # trailing comment\n"
            << "g = 0.25\n"
            << "\n"
            << "tau_max = 5\n";
    }
    const auto cfg = load_config(path.string(), {"g=0.5"});
    CHECK(cfg.model == Model::dressed);
    CHECK(cfg.two_level.kappa == 2.5);
    CHECK(cfg.two_level.g == 0.5);   // override wins
    CHECK(cfg.grids.tau_max == 5.0);
}

TEST_CASE("config rejects malformed input") {
    CHECK_THROWS_AS(load_config("", {"nonsense=1"}), ConfigError);
    CHECK_THROWS_AS(load_config("", {"kappa=abc"}), ConfigError);
    CHECK_THROWS_AS(load_config("", {"kappa=-1"}), ConfigError);
    CHECK_THROWS_AS(load_config("", {"gamma=2"}), ConfigError);
    CHECK_THROWS_AS(load_config("", {"model=nope"}), ConfigError);
    CHECK_THROWS_AS(load_config("", {"g2_mode=banana"}), ConfigError);
    CHECK_THROWS_AS(load_config("", {"manifolds=9p"}), ConfigError);
    CHECK_THROWS_AS(load_config("", {"drive_q=0"}), ConfigError);
    CHECK_THROWS_AS(load_config("", {"badpair"}), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/file.cfg", {}), ConfigError);
}

TEST_CASE("manifold list parsing") {
    const auto cfg = load_config("", {"model=cesium", "manifolds=3,4,3p,4p,5p"});
    CHECK(cfg.cesium.included_manifolds.size() == 5);
    CHECK(cfg.cesium.included_manifolds.count(cqed::models::Manifold::G3) == 1);
}

TEST_CASE("identical configs produce byte-identical scenario output") {
    TempDir a("simcli_det_a"), b("simcli_det_b");
    const std::vector<std::string> overrides = {"model=two-level", "kappa=1", "g=1",
                                                "sweep_min=23",    "sweep_max=27",
                                                "sweep_step=1",    "n_max=2"};
    auto cfg = load_config("", overrides);
    cfg.threads = 2;
    simcli::run_flux_sweep(cfg, a.path);
    simcli::run_flux_sweep(cfg, b.path);
    CHECK(slurp(a.path / "flux_sweep.csv") == slurp(b.path / "flux_sweep.csv"));
    CHECK(slurp(a.path / "summary.json") == slurp(b.path / "summary.json"));
    CHECK(!slurp(a.path / "flux_sweep.csv").empty());
}

TEST_CASE("g2 scenario emits analytic overlays for the dressed model") {
    TempDir dir("simcli_dressed_g2");
    auto cfg = load_config("", {"model=dressed", "kappa=2.5", "g=0.25", "tau_max=1",
                                "tau_step=0.1", "n_max=1", "convergence_check=off"});
    simcli::run_g2(cfg, dir.path);
    const std::string csv = slurp(dir.path / "g2_tau.csv");
    CHECK(csv.find("analytic_auto") != std::string::npos);
    CHECK(csv.find("analytic_cross") != std::string::npos);
}
