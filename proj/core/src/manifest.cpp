#include "smell/manifest.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "smell/types.hpp"

namespace smell {

std::string file_fingerprint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UserError("cannot open file for fingerprint: " + path);
  std::uint64_t h = 0xcbf29ce484222325ull;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const std::streamsize n = in.gcount();
    for (std::streamsize i = 0; i < n; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ull;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

nlohmann::json manifest_to_json(const RunManifest& m) {
  return {
      {"command", m.command},
      {"config", m.config},
      {"dataset_path", m.dataset_path},
      {"dataset_fingerprint", m.dataset_fingerprint},
      {"seed", m.seed},
      {"tool_version", m.tool_version},
      {"outputs", m.outputs},
  };
}

void write_manifest(const RunManifest& m, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const auto path = (std::filesystem::path(dir) / "manifest.json").string();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write manifest: " + path);
  out << manifest_to_json(m).dump(2) << "\n";
}

} // namespace smell
