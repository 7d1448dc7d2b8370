#include "output.hpp"

#include <cstdio>
#include <fstream>

#include "cqed/version.hpp"

namespace simcli {

namespace {

constexpr double kMhzPerGamma = 5.2;   // gamma / 2 pi in MHz, for display only

void put(std::vector<std::string>& lines, const std::string& k, const std::string& v) {
    lines.push_back("# " + k + " = " + v);
}

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

std::vector<std::string> provenance_header(const ScenarioConfig& cfg,
                                           const std::string& scenario) {
    std::vector<std::string> lines;
    put(lines, "generator", std::string("sim ") + cqed::kVersion);
    put(lines, "scenario", scenario);
    put(lines, "model", model_name(cfg.model));
    const auto& tl = cfg.two_level;
    put(lines, "gamma", "1 (unit of all rates)");
    put(lines, "kappa", format_number(tl.kappa));
    put(lines, "g", format_number(tl.g));
    put(lines, "omega_rabi", format_number(tl.omega_rabi));
    put(lines, "delta0", format_number(tl.delta0));
    put(lines, "n_max", std::to_string(tl.n_max));
    if (cfg.model == Model::cesium) {
        const auto& cs = cfg.cesium;
        put(lines, "ground_splitting", format_number(cs.ground_splitting));
        for (const auto& [fp, det] : cs.excited_detunings)
            put(lines, "detuning_" + std::to_string(fp) + "p", format_number(det));
        std::string mans;
        for (auto m : cs.included_manifolds) {
            if (!mans.empty()) mans += ",";
            mans += cqed::models::manifold_name(m);
        }
        put(lines, "manifolds", mans);
        put(lines, "drive_q", std::to_string(cs.drive_polarization));
    }
    put(lines, "solver", cfg.solver_mode);
    put(lines, "window", cfg.window);
    if (cfg.display_mhz) {
        put(lines, "display_units", "MHz columns via gamma/2pi = " +
                                         format_number(kMhzPerGamma) + " MHz");
        put(lines, "kappa_mhz", format_number(tl.kappa * kMhzPerGamma));
        put(lines, "g_mhz", format_number(tl.g * kMhzPerGamma));
        put(lines, "omega_rabi_mhz", format_number(tl.omega_rabi * kMhzPerGamma));
        put(lines, "delta0_mhz", format_number(tl.delta0 * kMhzPerGamma));
    }
    for (const auto& [k, v] : cfg.provenance) put(lines, "config." + k, v);
    return lines;
}

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     const std::vector<std::string>& header_lines,
                     const std::vector<std::string>& columns)
    : path_(path.string()), n_columns_(columns.size()) {
    for (const auto& line : header_lines) {
        buffer_ += line;
        buffer_ += '\n';
    }
    buffer_ += "# columns: ";
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) buffer_ += ",";
        buffer_ += columns[i];
    }
    buffer_ += '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) buffer_ += ",";
        buffer_ += columns[i];
    }
    buffer_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != n_columns_)
        throw std::logic_error("CsvWriter: column count mismatch in " + path_);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) buffer_ += ",";
        buffer_ += format_number(values[i]);
    }
    buffer_ += '\n';
}

CsvWriter::~CsvWriter() {
    std::ofstream out(path_, std::ios::binary);
    out << buffer_;
}

void write_json(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path, std::ios::binary);
    out << j.dump(2) << "\n";
}

void append_jsonl(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path, std::ios::binary | std::ios::app);
    out << j.dump() << "\n";
}

Json config_json(const ScenarioConfig& cfg) {
    Json j;
    j["model"] = model_name(cfg.model);
    j["kappa"] = cfg.two_level.kappa;
    j["g"] = cfg.two_level.g;
    j["omega_rabi"] = cfg.two_level.omega_rabi;
    j["delta0"] = cfg.two_level.delta0;
    j["n_max"] = cfg.two_level.n_max;
    if (cfg.model == Model::cesium) {
        j["ground_splitting"] = cfg.cesium.ground_splitting;
        Json dets;
        for (const auto& [fp, det] : cfg.cesium.excited_detunings)
            dets[std::to_string(fp) + "p"] = det;
        j["excited_detunings"] = dets;
        Json mans = Json::array();
        for (auto m : cfg.cesium.included_manifolds)
            mans.push_back(cqed::models::manifold_name(m));
        j["manifolds"] = mans;
        j["drive_q"] = cfg.cesium.drive_polarization;
    }
    j["solver"] = cfg.solver_mode;
    j["version"] = cqed::kVersion;
    return j;
}

}  // namespace simcli
