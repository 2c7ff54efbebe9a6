#include "rydmoc/conversion.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace rydmoc {

std::string_view to_string(Method m) {
  return m == Method::closed_form ? "closed_form" : "numeric";
}

double cooperativity(double rabi_drive, const RateSet& rates) {
  if (!(rates.gamma_mw_total > 0.0) || !(rates.kappa_opt_total > 0.0)) {
    throw std::invalid_argument("cooperativity: total microwave and optical decay must be > 0");
  }
  return rabi_drive * rabi_drive / (rates.gamma_mw_total * rates.kappa_opt_total);
}

double bandwidth_fwhm(double cooperativity, double kappa_total) {
  if (!(kappa_total > 0.0)) {
    throw std::invalid_argument("bandwidth_fwhm: kappa_total must be > 0");
  }
  return 2.0 * kappa_total * (1.0 + cooperativity);
}

ConversionResult efficiency_closed_form(double delta, double rabi_drive, const RateSet& rates) {
  ConversionResult res;
  res.method = Method::closed_form;
  res.cooperativity = cooperativity(rabi_drive, rates);
  res.extraction_mw = rates.extraction_mw;
  res.extraction_opt = rates.extraction_opt;
  const double c = res.cooperativity;
  const double x = delta / rates.kappa_opt_total;
  res.internal_factor = 4.0 * c / ((1.0 + c) * (1.0 + c) + x * x);
  res.eta = res.extraction_mw * res.extraction_opt * res.internal_factor;
  res.fwhm = bandwidth_fwhm(c, rates.kappa_opt_total);
  return res;
}

ConversionResult efficiency_numeric(double delta, double rabi_drive, const RateSet& rates,
                                    Direction direction, double mw_detuning) {
  using namespace std::complex_literals;
  if (rates.gamma_mw_total == 0.0 && rates.kappa_opt_total == 0.0) {
    throw SingularSystemError("efficiency_numeric: both modes are dissipationless");
  }

  Eigen::Matrix2cd m;
  m << rates.gamma_mw_total + 1i * mw_detuning, 1i * rabi_drive,
      1i * rabi_drive, rates.kappa_opt_total + 1i * delta;

  const double mw_port = std::sqrt(2.0 * rates.gamma_mw_1);
  const double opt_port = std::sqrt(2.0 * rates.kappa_opt_1);

  Eigen::Vector2cd rhs = Eigen::Vector2cd::Zero();
  if (direction == Direction::mw_to_opt) {
    rhs(0) = -1i * mw_port;
  } else {
    rhs(1) = -1i * opt_port;
  }

  if (m.determinant() == std::complex<double>{0.0, 0.0}) {
    throw SingularSystemError("efficiency_numeric: steady-state system is singular");
  }
  const Eigen::Vector2cd modes = m.partialPivLu().solve(rhs);

  // Converted port: the source port's input is zero on the output side.
  const std::complex<double> out = direction == Direction::mw_to_opt
                                       ? -1i * opt_port * modes(1)
                                       : -1i * mw_port * modes(0);

  ConversionResult res;
  res.method = Method::numeric;
  res.eta = std::norm(out);
  res.extraction_mw = rates.extraction_mw;
  res.extraction_opt = rates.extraction_opt;
  if (rates.gamma_mw_total > 0.0 && rates.kappa_opt_total > 0.0) {
    res.cooperativity = cooperativity(rabi_drive, rates);
    res.fwhm = bandwidth_fwhm(res.cooperativity, rates.kappa_opt_total);
    const double ext = res.extraction_mw * res.extraction_opt;
    res.internal_factor = ext > 0.0 ? res.eta / ext : 0.0;
  }
  return res;
}

EfficiencyBound efficiency_upper_bound(double lambda_mw, double waist_mw) {
  EfficiencyBound b;
  b.eta_bound = gaussian_channel_rate(lambda_mw, waist_mw, 1.0);
  b.diffraction_forbidden = waist_mw < diffraction_limited_waist(lambda_mw);
  return b;
}

OperatingPoint optimal_operating_point(const RateSet& rates) {
  OperatingPoint op;
  op.cooperativity = 1.0;
  op.delta = 0.0;
  op.eta = rates.extraction_mw * rates.extraction_opt;
  op.rabi_drive = std::sqrt(rates.gamma_mw_total * rates.kappa_opt_total);
  return op;
}

}  // namespace rydmoc
