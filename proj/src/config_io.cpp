#include "rydmoc/config_io.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include "rydmoc/units.hpp"

namespace rydmoc {
namespace {

using nlohmann::json;

enum class Kind { length, count, rate_hz, signed_hz };

struct NumericKey {
  const char* name;
  Kind kind;
  double SystemConfig::*field;
};

constexpr std::array<NumericKey, 13> kRequired{{
    {"lambda_mw_m", Kind::length, &SystemConfig::lambda_mw},
    {"lambda_opt_m", Kind::length, &SystemConfig::lambda_opt},
    {"waist_mw_m", Kind::length, &SystemConfig::waist_mw},
    {"waist_cloud_transverse_m", Kind::length, &SystemConfig::waist_cloud_transverse},
    {"sigma_cloud_longitudinal_m", Kind::length, &SystemConfig::sigma_cloud_longitudinal},
    {"ensemble_length_m", Kind::length, &SystemConfig::ensemble_length},
    {"atom_number", Kind::count, &SystemConfig::atom_number},
    {"gamma_gr_hz", Kind::rate_hz, &SystemConfig::gamma_gr},
    {"gamma_e_hz", Kind::rate_hz, &SystemConfig::gamma_e},
    {"gamma_r_prime_hz", Kind::rate_hz, &SystemConfig::gamma_r_prime},
    {"kappa_opt_0_hz", Kind::rate_hz, &SystemConfig::kappa_opt_0},
    {"rabi_drive_hz", Kind::rate_hz, &SystemConfig::rabi_drive},
    {"detuning_hz", Kind::signed_hz, &SystemConfig::detuning},
}};

constexpr std::array<const char*, 4> kOptional{
    {"omega_s_hz", "od_mean_override", "hold_gamma_r_prime", "hold_kappa_opt_0"}};

[[noreturn]] void fail(std::string_view key, const std::string& what) {
  throw ConfigError("config key '" + std::string(key) + "': " + what);
}

double read_number(const json& obj, std::string_view key) {
  const json& v = obj.at(std::string(key));
  if (!v.is_number()) fail(key, "expected a number, got " + std::string(v.type_name()));
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(key, "value is not finite");
  return x;
}

json parse_rejecting_duplicates(std::string_view text) {
  std::vector<std::set<std::string>> seen;
  auto callback = [&](int, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start:
        seen.emplace_back();
        break;
      case json::parse_event_t::object_end:
        seen.pop_back();
        break;
      case json::parse_event_t::key: {
        const auto& key = parsed.get_ref<const std::string&>();
        if (!seen.back().insert(key).second) fail(key, "duplicate key");
        break;
      }
      default:
        break;
    }
    return true;
  };
  try {
    return json::parse(text.begin(), text.end(), callback);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
}

}  // namespace

ParsedConfig parse_config_text(std::string_view text, const ParseOptions& options) {
  const json doc = parse_rejecting_duplicates(text);
  if (!doc.is_object()) throw ConfigError("config root must be a JSON object");

  ParsedConfig parsed;
  SystemConfig& cfg = parsed.config;

  for (const NumericKey& key : kRequired) {
    if (!doc.contains(key.name)) fail(key.name, "missing required key");
    const double x = read_number(doc, key.name);
    switch (key.kind) {
      case Kind::length:
        if (!(x > 0.0)) fail(key.name, "length must be positive");
        cfg.*key.field = x;
        break;
      case Kind::count:
        if (!(x >= 1.0)) fail(key.name, "atom number must be >= 1");
        cfg.*key.field = x;
        break;
      case Kind::rate_hz:
        if (x < 0.0) fail(key.name, "rate must be non-negative");
        cfg.*key.field = from_ordinary_frequency(x);
        break;
      case Kind::signed_hz:
        cfg.*key.field = from_ordinary_frequency(x);
        break;
    }
  }

  cfg.omega_s = doc.contains("omega_s_hz")
                    ? from_ordinary_frequency(read_number(doc, "omega_s_hz"))
                    : kTwoPi * kSpeedOfLight / cfg.lambda_mw;

  if (doc.contains("od_mean_override")) {
    const double od = read_number(doc, "od_mean_override");
    if (od < 0.0) fail("od_mean_override", "optical depth must be non-negative");
    cfg.od_mean_override = od;
  }
  for (auto [name, field] : {std::pair{"hold_gamma_r_prime", &SystemConfig::hold_gamma_r_prime},
                             std::pair{"hold_kappa_opt_0", &SystemConfig::hold_kappa_opt_0}}) {
    if (!doc.contains(name)) continue;
    const json& v = doc.at(name);
    if (!v.is_boolean()) fail(name, "expected a boolean");
    cfg.*field = v.get<bool>();
  }

  for (const auto& [key, value] : doc.items()) {
    bool known = false;
    for (const NumericKey& k : kRequired) known = known || key == k.name;
    for (const char* k : kOptional) known = known || key == k;
    if (known) continue;
    if (!options.lenient) fail(key, "unknown key (use --lenient to ignore)");
    parsed.warnings.push_back("ignoring unknown config key '" + key + "'");
  }

  try {
    check_invariants(cfg);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return parsed;
}

ParsedConfig parse_config(const std::filesystem::path& path, const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config_text(buf.str(), options);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

json config_to_json(const SystemConfig& cfg) {
  json j;
  j["lambda_mw_m"] = cfg.lambda_mw;
  j["lambda_opt_m"] = cfg.lambda_opt;
  j["waist_mw_m"] = cfg.waist_mw;
  j["waist_cloud_transverse_m"] = cfg.waist_cloud_transverse;
  j["sigma_cloud_longitudinal_m"] = cfg.sigma_cloud_longitudinal;
  j["ensemble_length_m"] = cfg.ensemble_length;
  j["atom_number"] = cfg.atom_number;
  j["gamma_gr_hz"] = to_ordinary_frequency(cfg.gamma_gr);
  j["gamma_e_hz"] = to_ordinary_frequency(cfg.gamma_e);
  j["gamma_r_prime_hz"] = to_ordinary_frequency(cfg.gamma_r_prime);
  j["kappa_opt_0_hz"] = to_ordinary_frequency(cfg.kappa_opt_0);
  j["rabi_drive_hz"] = to_ordinary_frequency(cfg.rabi_drive);
  j["detuning_hz"] = to_ordinary_frequency(cfg.detuning);
  j["omega_s_hz"] = to_ordinary_frequency(cfg.omega_s);
  if (cfg.od_mean_override) j["od_mean_override"] = *cfg.od_mean_override;
  j["hold_gamma_r_prime"] = cfg.hold_gamma_r_prime;
  j["hold_kappa_opt_0"] = cfg.hold_kappa_opt_0;
  return j;
}

std::string config_digest(const SystemConfig& cfg) {
  const std::string canonical = config_to_json(cfg).dump();
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(canonical.data(), canonical.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("config_digest: SHA-256 failed");
  }
  std::ostringstream hex;
  hex << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i) hex << std::setw(2) << static_cast<int>(md[i]);
  return hex.str();
}

}  // namespace rydmoc
