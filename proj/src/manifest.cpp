#include "rydmoc/manifest.hpp"

#include <ctime>
#include <fstream>
#include <stdexcept>

namespace rydmoc {

std::string tool_version() { return RYDMOC_VERSION; }

std::string rfc3339_utc(std::chrono::system_clock::time_point t) {
  const std::time_t secs = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json to_json(const RunManifest& m) {
  return {{"tool_version", m.tool_version},
          {"config_digest", m.config_digest},
          {"command", m.command},
          {"timestamp", m.timestamp},
          {"outputs", m.outputs}};
}

std::filesystem::path manifest_path_for(const std::filesystem::path& output) {
  return std::filesystem::path(output.string() + ".manifest.json");
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write manifest '" + path.string() + "'");
  out << to_json(manifest).dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing manifest '" + path.string() + "'");
}

}  // namespace rydmoc
