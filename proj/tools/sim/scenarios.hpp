// scenarios.hpp — Scenario execution: spectra, flux sweeps, g2 correlation
// runs, Cauchy-Schwarz bound reports, and reference-figure data sets.

#pragma once

#include <filesystem>
#include <string>

#include "config.hpp"

namespace simcli {

void run_spectrum(const ScenarioConfig& cfg, const std::filesystem::path& outdir);
void run_flux_sweep(const ScenarioConfig& cfg, const std::filesystem::path& outdir);
void run_g2(const ScenarioConfig& cfg, const std::filesystem::path& outdir);
void run_cs_bounds(const ScenarioConfig& cfg, const std::filesystem::path& outdir);

// which: fig1, fig2, fig3, fig4, fig6, fig7
void run_figure(const ScenarioConfig& cfg, const std::string& which,
                const std::filesystem::path& outdir);

}  // namespace simcli
