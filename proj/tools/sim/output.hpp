// output.hpp — CSV emission with provenance headers and JSON run summaries.
// Numeric cells use 17 significant digits so files round-trip exactly;
// identical configs produce byte-identical output.

#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

#include "config.hpp"

namespace simcli {

using Json = nlohmann::ordered_json;

// '#'-prefixed key = value lines recording the full run configuration.
std::vector<std::string> provenance_header(const ScenarioConfig& cfg, const std::string& scenario);

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header_lines,
              const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);
    ~CsvWriter();

private:
    std::string path_;
    std::string buffer_;
    std::size_t n_columns_;
};

std::string format_number(double v);   // %.16e

void write_json(const std::filesystem::path& path, const Json& j);
void append_jsonl(const std::filesystem::path& path, const Json& j);

Json config_json(const ScenarioConfig& cfg);

}  // namespace simcli
