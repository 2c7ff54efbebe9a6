#include "rydmoc/coupling_rates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rydmoc {
namespace {

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string(what) + " must be positive and finite, got " +
                                std::to_string(value));
  }
}

void require_non_negative(double value, const char* what) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string(what) + " must be non-negative and finite, got " +
                                std::to_string(value));
  }
}

double ratio_or_zero(double num, double den) { return den > 0.0 ? num / den : 0.0; }

}  // namespace

RateSet RateSet::from_rates(double gamma_R, double gamma_mw_1, double gamma_r_prime,
                            double kappa_opt_1, double kappa_opt_0) {
  RateSet r;
  r.gamma_R = gamma_R;
  r.gamma_mw_1 = gamma_mw_1;
  r.gamma_r_prime = gamma_r_prime;
  r.kappa_opt_1 = kappa_opt_1;
  r.kappa_opt_0 = kappa_opt_0;
  r.gamma_mw_total = gamma_r_prime + gamma_R;
  r.kappa_opt_total = kappa_opt_0 + kappa_opt_1;
  r.extraction_mw = ratio_or_zero(gamma_mw_1, r.gamma_mw_total);
  r.extraction_opt = ratio_or_zero(kappa_opt_1, r.kappa_opt_total);
  return r;
}

double collective_mw_decay(double atom_number, double gamma_gr) {
  if (!(atom_number >= 1.0) || !std::isfinite(atom_number)) {
    throw std::invalid_argument("atom_number must be >= 1, got " + std::to_string(atom_number));
  }
  require_non_negative(gamma_gr, "gamma_gr");
  return atom_number * gamma_gr;
}

double gaussian_channel_rate(double lambda_mw, double waist_mw, double gamma_R) {
  require_positive(lambda_mw, "lambda_mw");
  require_positive(waist_mw, "waist_mw");
  require_non_negative(gamma_R, "gamma_R");
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  return 3.0 * lambda_mw * lambda_mw / (4.0 * pi2 * waist_mw * waist_mw) * gamma_R;
}

double diffraction_limited_waist(double lambda_mw) {
  require_positive(lambda_mw, "lambda_mw");
  return 2.0 * lambda_mw / std::numbers::pi;
}

OpticalDepthModel mean_optical_depth(double atom_number, double lambda_opt,
                                     double waist_cloud_transverse) {
  require_positive(atom_number, "atom_number");
  require_positive(lambda_opt, "lambda_opt");
  require_positive(waist_cloud_transverse, "waist_cloud_transverse");
  constexpr double pi = std::numbers::pi;
  OpticalDepthModel od;
  od.cross_section = 3.0 * lambda_opt * lambda_opt / (2.0 * pi);
  od.column_density = atom_number / (2.0 * pi * waist_cloud_transverse * waist_cloud_transverse);
  od.od_mean = od.cross_section * od.column_density;
  return od;
}

double optical_channel_rate(double od_mean, double gamma_e) {
  require_non_negative(od_mean, "od_mean");
  require_non_negative(gamma_e, "gamma_e");
  return od_mean / 4.0 * gamma_e;
}

OpticalDepthModel default_optical_depth(const SystemConfig& cfg) {
  OpticalDepthModel od = mean_optical_depth(cfg.atom_number, cfg.lambda_opt,
                                            cfg.waist_cloud_transverse);
  if (cfg.od_mean_override) {
    require_non_negative(*cfg.od_mean_override, "od_mean_override");
    od.od_mean = *cfg.od_mean_override;
    od.column_density = od.od_mean / od.cross_section;
  }
  return od;
}

RateSet build_rate_set(const SystemConfig& cfg, const OpticalDepthStrategy& optical_depth) {
  check_invariants(cfg);
  const double gamma_R = collective_mw_decay(cfg.atom_number, cfg.gamma_gr);
  const double gamma_mw_1 = gaussian_channel_rate(cfg.lambda_mw, cfg.waist_mw, gamma_R);
  const OpticalDepthModel od = optical_depth(cfg);
  const double kappa_opt_1 = optical_channel_rate(od.od_mean, cfg.gamma_e);
  RateSet r = RateSet::from_rates(gamma_R, gamma_mw_1, cfg.gamma_r_prime, kappa_opt_1,
                                  cfg.kappa_opt_0);
  r.od_mean = od.od_mean;
  return r;
}

}  // namespace rydmoc
