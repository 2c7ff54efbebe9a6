#include "rydmoc/system_config.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rydmoc/coupling_rates.hpp"

namespace rydmoc {
namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void positive_length(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) + ": length must be positive, got " + fmt(v));
  }
}

void non_negative_rate(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) + ": rate must be non-negative, got " + fmt(v));
  }
}

void finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) + ": value must be finite");
  }
}

}  // namespace

void check_invariants(const SystemConfig& cfg) {
  positive_length(cfg.lambda_mw, "lambda_mw");
  positive_length(cfg.lambda_opt, "lambda_opt");
  positive_length(cfg.waist_mw, "waist_mw");
  positive_length(cfg.waist_cloud_transverse, "waist_cloud_transverse");
  positive_length(cfg.sigma_cloud_longitudinal, "sigma_cloud_longitudinal");
  positive_length(cfg.ensemble_length, "ensemble_length");
  if (!(cfg.atom_number >= 1.0) || !std::isfinite(cfg.atom_number)) {
    throw std::invalid_argument("atom_number: must be >= 1, got " + fmt(cfg.atom_number));
  }
  non_negative_rate(cfg.gamma_gr, "gamma_gr");
  non_negative_rate(cfg.gamma_e, "gamma_e");
  non_negative_rate(cfg.gamma_r_prime, "gamma_r_prime");
  non_negative_rate(cfg.kappa_opt_0, "kappa_opt_0");
  non_negative_rate(cfg.rabi_drive, "rabi_drive");
  finite(cfg.detuning, "detuning");
  finite(cfg.omega_s, "omega_s");
  if (cfg.od_mean_override) {
    non_negative_rate(*cfg.od_mean_override, "od_mean_override");
  }
}

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::warn: return "warn";
    case CheckStatus::fail: return "fail";
  }
  return "unknown";
}

bool ValidationReport::has_failure() const {
  return std::any_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.status == CheckStatus::fail; });
}

bool ValidationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.status == CheckStatus::pass; });
}

const CheckResult* ValidationReport::find(std::string_view name) const {
  auto it = std::find_if(checks.begin(), checks.end(),
                         [&](const CheckResult& c) { return c.name == name; });
  return it == checks.end() ? nullptr : &*it;
}

ValidationReport validate_regime(const SystemConfig& cfg, const RegimeThresholds& thresholds) {
  ValidationReport report;

  {
    const double mw_ratio = cfg.lambda_mw / cfg.ensemble_length;
    const double opt_ratio = cfg.ensemble_length / cfg.lambda_opt;
    const bool ok = mw_ratio >= thresholds.scale_ratio && opt_ratio >= thresholds.scale_ratio;
    report.checks.push_back(
        {"scale_separation", ok ? CheckStatus::pass : CheckStatus::warn,
         "lambda_mw/L = " + fmt(mw_ratio) + ", L/lambda_opt = " + fmt(opt_ratio) +
             " (threshold " + fmt(thresholds.scale_ratio) + ")"});
  }

  {
    const bool ok = cfg.atom_number >= thresholds.min_atoms;
    report.checks.push_back({"atom_number", ok ? CheckStatus::pass : CheckStatus::warn,
                             "N = " + fmt(cfg.atom_number) + " (threshold " +
                                 fmt(thresholds.min_atoms) + ")"});
  }

  {
    const double w_min = diffraction_limited_waist(cfg.lambda_mw);
    const bool ok = !(cfg.waist_mw < w_min);
    report.checks.push_back({"diffraction_limit", ok ? CheckStatus::pass : CheckStatus::fail,
                             "w0 = " + fmt(cfg.waist_mw) + " m, minimum 2*lambda_mw/pi = " +
                                 fmt(w_min) + " m"});
  }

  {
    const double od = default_optical_depth(cfg).od_mean;
    const bool ok = od >= thresholds.min_optical_depth;
    report.checks.push_back({"optical_depth", ok ? CheckStatus::pass : CheckStatus::warn,
                             "mean OD = " + fmt(od) + " (threshold " +
                                 fmt(thresholds.min_optical_depth) + ")"});
  }

  return report;
}

}  // namespace rydmoc
