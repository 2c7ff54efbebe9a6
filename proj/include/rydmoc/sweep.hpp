#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rydmoc/conversion.hpp"
#include "rydmoc/system_config.hpp"

namespace rydmoc {

enum class SweepAxis { detuning, atom_number, rabi_drive, waist_mw };
enum class Spacing { linear, logarithmic };

std::string_view to_string(SweepAxis axis);
std::string_view to_string(Spacing spacing);
std::optional<SweepAxis> parse_axis(std::string_view name);

/// CSV column name for the axis, `<axis>_<unit>`.
std::string_view axis_column(SweepAxis axis);

struct SweepSpec {
  SweepAxis axis = SweepAxis::detuning;
  double min = 0.0;  ///< axis units: rad/s, count or m
  double max = 1.0;
  std::size_t points = 2;
  Spacing spacing = Spacing::linear;
  SystemConfig base_config;

  /// Throws std::invalid_argument unless min < max, points >= 2 and log spacing has min > 0.
  void validate() const;
};

/// Axis samples in increasing order; endpoints are exactly min and max.
std::vector<double> axis_grid(const SweepSpec& spec);

/**
 * Returns base with the swept quantity replaced. Atom-number moves rescale
 * gamma_r_prime and kappa_opt_0 by N/N_base unless the matching hold flag is
 * set, and rescale od_mean_override so OD stays linear in N.
 */
SystemConfig apply_axis(const SystemConfig& base, SweepAxis axis, double value);

/// Rates and efficiency for cfg.detuning and cfg.rabi_drive.
ConversionResult evaluate_point(const SystemConfig& cfg, Method method = Method::closed_form);

struct ScanPoint {
  std::optional<ConversionResult> result;
  std::string error;  ///< set when result is empty

  [[nodiscard]] bool ok() const { return result.has_value(); }
};

struct ScanResult {
  SweepAxis axis = SweepAxis::detuning;
  Spacing spacing = Spacing::linear;
  std::string config_digest;
  std::vector<double> axis_values;
  std::vector<ScanPoint> points;
};

/// One row per axis value, in axis order. Per-point failures are recorded
/// in-band. The output does not depend on the thread count.
ScanResult run_sweep(const SweepSpec& spec, unsigned threads = 1);

struct ScalarOptimum {
  double x = 0.0;
  double value = 0.0;
  bool boundary = false;    ///< maximum sits on a range endpoint, no refinement
  bool multimodal = false;  ///< pre-scan found several local maxima, grid argmax returned
  std::size_t evaluations = 0;
};

inline constexpr std::size_t kPrescanPoints = 64;

/**
 * Maximizes f on [lo, hi]: a 64-point pre-scan brackets the maximum, then a
 * golden-section search refines it to relative width tol (in log x for
 * logarithmic spacing). The returned value is never below any pre-scan
 * sample; plateau ties go to the smallest x. Samples where f throws count
 * as -infinity.
 */
ScalarOptimum maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                              Spacing spacing = Spacing::linear, double tol = 1e-6);

struct AxisOptimum {
  double axis_value = 0.0;
  double eta = 0.0;
  double cooperativity = 0.0;
  bool boundary = false;
  bool multimodal = false;
  std::size_t evaluations = 0;
};

AxisOptimum maximize_over_axis(const SweepSpec& spec, double tol = 1e-6);

struct BoundCurve {
  double lambda_mw = 0.0;
  std::vector<double> waists;
  std::vector<double> eta_bound;
  std::vector<bool> forbidden;
};

BoundCurve bound_curve(double lambda_mw, double waist_min, double waist_max, std::size_t points,
                       Spacing spacing = Spacing::linear);

}  // namespace rydmoc
