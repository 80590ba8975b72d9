#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace smell {

/// Traceability record written next to every artifact directory's outputs.
struct RunManifest {
  std::string command;
  nlohmann::json config;
  std::string dataset_path;
  std::string dataset_fingerprint; // hex FNV-1a over file bytes
  std::uint64_t seed = 0;
  std::string tool_version;
  std::vector<std::string> outputs;
};

/// FNV-1a (64-bit) over the raw bytes of a file, as a hex string.
std::string file_fingerprint(const std::string& path);

nlohmann::json manifest_to_json(const RunManifest& m);

/// Writes <dir>/manifest.json, creating the directory if needed.
void write_manifest(const RunManifest& m, const std::string& dir);

} // namespace smell
