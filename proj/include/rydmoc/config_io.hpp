#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "rydmoc/system_config.hpp"

namespace rydmoc {

/// Malformed or out-of-contract configuration; the message names the key path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParseOptions {
  bool lenient = false;  ///< unknown keys become warnings instead of errors
};

struct ParsedConfig {
  SystemConfig config;
  std::vector<std::string> warnings;
};

/**
 * Reads a JSON config object. Frequencies are ordinary (`*_hz`) and are
 * converted to rad/s here. Required keys:
 *   lambda_mw_m lambda_opt_m waist_mw_m waist_cloud_transverse_m
 *   sigma_cloud_longitudinal_m ensemble_length_m atom_number gamma_gr_hz
 *   gamma_e_hz gamma_r_prime_hz kappa_opt_0_hz rabi_drive_hz detuning_hz
 * Optional: omega_s_hz (default c / lambda_mw), od_mean_override,
 * hold_gamma_r_prime, hold_kappa_opt_0. Duplicate keys are rejected.
 */
ParsedConfig parse_config_text(std::string_view text, const ParseOptions& options = {});
ParsedConfig parse_config(const std::filesystem::path& path, const ParseOptions& options = {});

/// The config in file schema (Hz keys). Keys come out sorted.
nlohmann::json config_to_json(const SystemConfig& cfg);

/// Hex SHA-256 of the canonical (sorted, compact) JSON form of cfg.
std::string config_digest(const SystemConfig& cfg);

}  // namespace rydmoc
