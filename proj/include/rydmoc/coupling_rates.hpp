#pragma once

#include <functional>

#include "rydmoc/system_config.hpp"

namespace rydmoc {

struct OpticalDepthModel {
  double cross_section = 0.0;   ///< resonant cross-section (m^2)
  double column_density = 0.0;  ///< mean transverse column density (1/m^2)
  double od_mean = 0.0;
};

/// Collective rates derived from a SystemConfig. All rates in rad/s.
struct RateSet {
  double gamma_R = 0.0;
  double gamma_mw_1 = 0.0;
  double gamma_r_prime = 0.0;
  double kappa_opt_1 = 0.0;
  double kappa_opt_0 = 0.0;
  double gamma_mw_total = 0.0;   ///< gamma_r_prime + gamma_R
  double kappa_opt_total = 0.0;  ///< kappa_opt_0 + kappa_opt_1
  double extraction_mw = 0.0;    ///< gamma_mw_1 / gamma_mw_total, 0 when the total vanishes
  double extraction_opt = 0.0;   ///< kappa_opt_1 / kappa_opt_total, 0 when the total vanishes
  double od_mean = 0.0;

  /// Fills the totals and extraction factors from the five primary rates.
  static RateSet from_rates(double gamma_R, double gamma_mw_1, double gamma_r_prime,
                            double kappa_opt_1, double kappa_opt_0);
};

/// gamma_R = N * gamma_gr. Throws for N < 1 or a negative rate.
double collective_mw_decay(double atom_number, double gamma_gr);

/// (3 lambda^2 / 4 pi^2 w0^2) * gamma_R, unclamped.
double gaussian_channel_rate(double lambda_mw, double waist_mw, double gamma_R);

/// Smallest free-space Gaussian waist, 2 lambda / pi.
double diffraction_limited_waist(double lambda_mw);

/// Two-level resonant cross-section times the mean column density of a
/// Gaussian cloud: OD = [3 lambda^2 / 2 pi] * N / (2 pi w_t^2).
OpticalDepthModel mean_optical_depth(double atom_number, double lambda_opt,
                                     double waist_cloud_transverse);

/// kappa_opt,1 = (OD / 4) * gamma_e.
double optical_channel_rate(double od_mean, double gamma_e);

/// Pluggable optical-depth estimate used by build_rate_set.
using OpticalDepthStrategy = std::function<OpticalDepthModel(const SystemConfig&)>;

/// Gaussian-cloud estimate, or cfg.od_mean_override when present.
OpticalDepthModel default_optical_depth(const SystemConfig& cfg);

RateSet build_rate_set(const SystemConfig& cfg,
                       const OpticalDepthStrategy& optical_depth = default_optical_depth);

}  // namespace rydmoc
