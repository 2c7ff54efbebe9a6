#pragma once

#include <string_view>

#include "rydmoc/coupling_rates.hpp"
#include "rydmoc/errors.hpp"

namespace rydmoc {

enum class Method { closed_form, numeric };

std::string_view to_string(Method m);

struct ConversionResult {
  double eta = 0.0;
  double cooperativity = 0.0;
  double extraction_mw = 0.0;
  double extraction_opt = 0.0;
  double internal_factor = 0.0;  ///< 4C / [(1+C)^2 + delta^2/kappa^2]
  double fwhm = 0.0;             ///< full width of eta(delta), rad/s
  Method method = Method::closed_form;
};

/// Conversion direction for the numeric route.
enum class Direction { mw_to_opt, opt_to_mw };

/// C = Omega_c^2 / (gamma_mw_total * kappa_opt_total). Throws if either total is zero.
double cooperativity(double rabi_drive, const RateSet& rates);

/// Analytic efficiency with the optical Lorentzian width kappa_opt_total.
ConversionResult efficiency_closed_form(double delta, double rabi_drive, const RateSet& rates);

/**
 * Solves the two-mode steady state
 *
 *   [ gamma_tot + i*mw_detuning   i*Omega         ] [S]      [ sqrt(2 gamma_mw_1) b_in ]
 *   [ i*Omega                     kappa_tot + i*d ] [E] = -i [ sqrt(2 kappa_opt_1) a_in ]
 *
 * with a unit input on the source port and returns |converted output|^2.
 * mw_detuning is an extension beyond the resonant-microwave model and
 * defaults to zero. Throws SingularSystemError when there is no dissipation.
 */
ConversionResult efficiency_numeric(double delta, double rabi_drive, const RateSet& rates,
                                    Direction direction = Direction::mw_to_opt,
                                    double mw_detuning = 0.0);

/// 2 kappa_total (1 + C).
double bandwidth_fwhm(double cooperativity, double kappa_total);

struct EfficiencyBound {
  double eta_bound = 0.0;
  bool diffraction_forbidden = false;  ///< w0 < 2 lambda_mw / pi
};

/// 3 lambda^2 / (4 pi^2 w0^2), the microwave extraction ceiling.
EfficiencyBound efficiency_upper_bound(double lambda_mw, double waist_mw);

struct OperatingPoint {
  double cooperativity = 1.0;
  double delta = 0.0;
  double eta = 0.0;
  double rabi_drive = 0.0;  ///< drive that realizes C = 1 for these rates
};

OperatingPoint optimal_operating_point(const RateSet& rates);

}  // namespace rydmoc
