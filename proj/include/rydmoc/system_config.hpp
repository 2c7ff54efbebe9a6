#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rydmoc {

/**
 * Physical description of a free-space Rydberg-ensemble converter.
 *
 * Lengths are in metres. Every rate, detuning and frequency is an angular
 * quantity in rad/s; conversion from Hz happens only at the I/O boundary.
 */
struct SystemConfig {
  double lambda_mw = 0.0;                 ///< microwave wavelength
  double lambda_opt = 0.0;                ///< optical wavelength
  double waist_mw = 0.0;                  ///< microwave Gaussian beam waist w0
  double waist_cloud_transverse = 0.0;    ///< transverse cloud waist w_t
  double sigma_cloud_longitudinal = 0.0;  ///< cloud width along the optical axis
  double ensemble_length = 0.0;           ///< ensemble size L
  double atom_number = 1.0;               ///< N (real-valued so it can be swept)

  double gamma_gr = 0.0;       ///< single-atom |r> -> |g> emission rate
  double gamma_e = 0.0;        ///< single-atom optical emission rate
  double gamma_r_prime = 0.0;  ///< non-radiative / other-frequency super-atom decay
  double kappa_opt_0 = 0.0;    ///< intrinsic spin-wave decay
  double rabi_drive = 0.0;     ///< control Rabi frequency
  double detuning = 0.0;       ///< optical detuning delta
  double omega_s = 0.0;        ///< super-atom transition frequency

  /// Replaces the cloud-geometry optical depth estimate when set.
  std::optional<double> od_mean_override;
  /// Atom-number sweeps keep gamma_r_prime fixed when true, scale it with N otherwise.
  bool hold_gamma_r_prime = true;
  /// Same as hold_gamma_r_prime, for kappa_opt_0.
  bool hold_kappa_opt_0 = true;

  friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

/// Throws std::invalid_argument naming the first field that breaks the
/// type invariants (positive lengths, N >= 1, non-negative rates, finite values).
void check_invariants(const SystemConfig& cfg);

enum class CheckStatus { pass, warn, fail };

std::string_view to_string(CheckStatus status);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  std::string message;

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  [[nodiscard]] bool has_failure() const;
  [[nodiscard]] bool all_pass() const;
  [[nodiscard]] const CheckResult* find(std::string_view name) const;

  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

/// Thresholds that turn the asymptotic regime relations into numbers.
struct RegimeThresholds {
  double scale_ratio = 10.0;  ///< minimum of lambda_mw / L and L / lambda_opt
  double min_atoms = 1e3;
  double min_optical_depth = 1.0;
};

/**
 * Reports the four regime checks, in this order and each exactly once:
 *   scale_separation   lambda_mw >> L >> lambda_opt            (warn)
 *   atom_number        N large enough for the bosonic mode     (warn)
 *   diffraction_limit  w0 >= 2 lambda_mw / pi                  (fail)
 *   optical_depth      mean OD >= threshold                    (warn)
 * Findings are in-band; the function does not throw for a config that
 * satisfies check_invariants.
 */
ValidationReport validate_regime(const SystemConfig& cfg, const RegimeThresholds& thresholds = {});

}  // namespace rydmoc
