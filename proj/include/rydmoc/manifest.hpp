#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace rydmoc {

/// Provenance record written next to every file output of the CLI.
struct RunManifest {
  std::string tool_version;
  std::string config_digest;  ///< empty for commands that take no config
  std::string command;
  std::string timestamp;      ///< UTC, RFC 3339
  std::vector<std::string> outputs;
};

std::string tool_version();

/// e.g. 2026-10-14T08:30:00Z
std::string rfc3339_utc(std::chrono::system_clock::time_point t);

nlohmann::json to_json(const RunManifest& manifest);

/// <output>.manifest.json
std::filesystem::path manifest_path_for(const std::filesystem::path& output);

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);

}  // namespace rydmoc
