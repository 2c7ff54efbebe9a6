#include "rydmoc/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "rydmoc/config_io.hpp"
#include "rydmoc/coupling_rates.hpp"

namespace rydmoc {

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::detuning: return "detuning";
    case SweepAxis::atom_number: return "atom_number";
    case SweepAxis::rabi_drive: return "rabi_drive";
    case SweepAxis::waist_mw: return "waist_mw";
  }
  return "unknown";
}

std::string_view to_string(Spacing spacing) {
  return spacing == Spacing::linear ? "linear" : "logarithmic";
}

std::optional<SweepAxis> parse_axis(std::string_view name) {
  for (SweepAxis a : {SweepAxis::detuning, SweepAxis::atom_number, SweepAxis::rabi_drive,
                      SweepAxis::waist_mw}) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

std::string_view axis_column(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::detuning: return "delta_rad_per_s";
    case SweepAxis::atom_number: return "atom_number";
    case SweepAxis::rabi_drive: return "rabi_drive_rad_per_s";
    case SweepAxis::waist_mw: return "waist_mw_m";
  }
  return "axis";
}

void SweepSpec::validate() const {
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
    throw std::invalid_argument("sweep range must satisfy min < max");
  }
  if (points < 2) {
    throw std::invalid_argument("sweep needs at least 2 points");
  }
  if (spacing == Spacing::logarithmic && !(min > 0.0)) {
    throw std::invalid_argument("logarithmic spacing requires min > 0");
  }
}

namespace {

// Lower half is measured from lo and upper half from hi, so a range
// symmetric about zero yields an exactly antisymmetric grid.
std::vector<double> make_grid(double lo, double hi, std::size_t n, Spacing spacing) {
  std::vector<double> grid(n);
  const double denom = static_cast<double>(n - 1);
  if (spacing == Spacing::linear) {
    const double span = hi - lo;
    for (std::size_t i = 0; i < n; ++i) {
      grid[i] = 2 * i <= n - 1 ? lo + span * (static_cast<double>(i) / denom)
                               : hi - span * (static_cast<double>(n - 1 - i) / denom);
    }
  } else {
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (std::size_t i = 0; i < n; ++i) {
      grid[i] = std::exp(a + (b - a) * (static_cast<double>(i) / denom));
    }
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

}  // namespace

std::vector<double> axis_grid(const SweepSpec& spec) {
  spec.validate();
  return make_grid(spec.min, spec.max, spec.points, spec.spacing);
}

SystemConfig apply_axis(const SystemConfig& base, SweepAxis axis, double value) {
  SystemConfig cfg = base;
  switch (axis) {
    case SweepAxis::detuning:
      cfg.detuning = value;
      break;
    case SweepAxis::rabi_drive:
      cfg.rabi_drive = value;
      break;
    case SweepAxis::waist_mw:
      cfg.waist_mw = value;
      break;
    case SweepAxis::atom_number: {
      const double scale = value / base.atom_number;
      cfg.atom_number = value;
      if (!base.hold_gamma_r_prime) cfg.gamma_r_prime = base.gamma_r_prime * scale;
      if (!base.hold_kappa_opt_0) cfg.kappa_opt_0 = base.kappa_opt_0 * scale;
      if (base.od_mean_override) cfg.od_mean_override = *base.od_mean_override * scale;
      break;
    }
  }
  return cfg;
}

ConversionResult evaluate_point(const SystemConfig& cfg, Method method) {
  const RateSet rates = build_rate_set(cfg);
  return method == Method::closed_form ? efficiency_closed_form(cfg.detuning, cfg.rabi_drive, rates)
                                       : efficiency_numeric(cfg.detuning, cfg.rabi_drive, rates);
}

ScanResult run_sweep(const SweepSpec& spec, unsigned threads) {
  ScanResult out;
  out.axis = spec.axis;
  out.spacing = spec.spacing;
  out.config_digest = config_digest(spec.base_config);
  out.axis_values = axis_grid(spec);
  out.points.resize(out.axis_values.size());

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        out.points[i].result = evaluate_point(apply_axis(spec.base_config, spec.axis,
                                                         out.axis_values[i]));
      } catch (const std::exception& e) {
        out.points[i].error = e.what();
      }
    }
  };

  const std::size_t n = out.axis_values.size();
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, n);
  if (workers == 1) {
    work(0, n);
    return out;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t begin = 0; begin < n; begin += chunk) {
    pool.emplace_back(work, begin, std::min(n, begin + chunk));
  }
  pool.clear();  // joins
  return out;
}

ScalarOptimum maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                              Spacing spacing, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("maximize_scalar: need lo < hi");
  if (spacing == Spacing::logarithmic && !(lo > 0.0)) {
    throw std::invalid_argument("maximize_scalar: logarithmic spacing requires lo > 0");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("maximize_scalar: tol must be > 0");

  ScalarOptimum best;
  auto eval = [&](double x) {
    ++best.evaluations;
    try {
      const double v = f(x);
      return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
    } catch (const std::exception&) {
      return -std::numeric_limits<double>::infinity();
    }
  };

  const std::vector<double> grid = make_grid(lo, hi, kPrescanPoints, spacing);
  std::vector<double> values(grid.size());
  std::size_t arg = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = eval(grid[i]);
    if (values[i] > values[arg]) arg = i;
  }
  best.x = grid[arg];
  best.value = values[arg];

  std::size_t local_maxima = 0;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    if (values[i] > values[i - 1] && values[i] >= values[i + 1]) ++local_maxima;
  }
  if (arg == 0 || arg + 1 == grid.size()) {
    best.boundary = true;
    best.multimodal = local_maxima > 0;
    return best;
  }
  if (local_maxima > 1) {
    best.multimodal = true;
    return best;
  }

  const bool log = spacing == Spacing::logarithmic;
  auto to_x = [&](double u) { return log ? std::exp(u) : u; };
  double a = log ? std::log(grid[arg - 1]) : grid[arg - 1];
  double b = log ? std::log(grid[arg + 1]) : grid[arg + 1];
  const double floor = 4.0 * std::numeric_limits<double>::epsilon() *
                       (log ? std::max(std::abs(a), std::abs(b)) : std::max(std::abs(lo), std::abs(hi)));

  constexpr double inv_phi = 0.6180339887498949;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = eval(to_x(c));
  double fd = eval(to_x(d));
  for (int iter = 0; iter < 500; ++iter) {
    const double width = b - a;
    const double scale = log ? 1.0 : std::abs(0.5 * (a + b));
    if (width <= tol * scale || width <= floor) break;
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval(to_x(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval(to_x(d));
    }
  }
  const double u = fc >= fd ? c : d;
  const double fu = std::max(fc, fd);
  if (fu >= best.value) {
    best.x = to_x(u);
    best.value = fu;
  }
  return best;
}

AxisOptimum maximize_over_axis(const SweepSpec& spec, double tol) {
  spec.validate();
  auto objective = [&](double x) {
    return evaluate_point(apply_axis(spec.base_config, spec.axis, x)).eta;
  };
  const ScalarOptimum opt = maximize_scalar(objective, spec.min, spec.max, spec.spacing, tol);
  AxisOptimum res;
  res.axis_value = opt.x;
  res.eta = opt.value;
  res.boundary = opt.boundary;
  res.multimodal = opt.multimodal;
  res.evaluations = opt.evaluations;
  res.cooperativity =
      evaluate_point(apply_axis(spec.base_config, spec.axis, opt.x)).cooperativity;
  return res;
}

BoundCurve bound_curve(double lambda_mw, double waist_min, double waist_max, std::size_t points,
                       Spacing spacing) {
  if (!(waist_min > 0.0) || !(waist_min < waist_max) || points < 2) {
    throw std::invalid_argument("bound_curve: need 0 < waist_min < waist_max and points >= 2");
  }
  BoundCurve curve;
  curve.lambda_mw = lambda_mw;
  curve.waists = make_grid(waist_min, waist_max, points, spacing);
  for (double w : curve.waists) {
    const EfficiencyBound b = efficiency_upper_bound(lambda_mw, w);
    curve.eta_bound.push_back(b.eta_bound);
    curve.forbidden.push_back(b.diffraction_forbidden);
  }
  return curve;
}

}  // namespace rydmoc
