#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"

#include "rydmoc/config_io.hpp"
#include "rydmoc/sweep.hpp"
#include "test_support.hpp"

using namespace rydmoc;
using rydmoc::testing::reference_config;

namespace {

SweepSpec spec_for(SweepAxis axis, double lo, double hi, std::size_t n, Spacing spacing,
                   SystemConfig base = reference_config()) {
  SweepSpec s;
  s.axis = axis;
  s.min = lo;
  s.max = hi;
  s.points = n;
  s.spacing = spacing;
  s.base_config = base;
  return s;
}

std::size_t count_interior_maxima(const std::vector<double>& v) {
  std::size_t n = 0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] > v[i - 1] && v[i] >= v[i + 1]) ++n;
  }
  return n;
}

std::vector<double> etas(const ScanResult& scan) {
  std::vector<double> out;
  for (const auto& p : scan.points) out.push_back(p.result->eta);
  return out;
}

// Brute-force argmax of eta(N) on a dense log grid.
double dense_argmax_atoms(const SystemConfig& base, double lo, double hi, int n) {
  double best_x = lo;
  double best = -1.0;
  for (int i = 0; i < n; ++i) {
    const double x = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    const double eta = evaluate_point(apply_axis(base, SweepAxis::atom_number, x)).eta;
    if (eta > best) {
      best = eta;
      best_x = x;
    }
  }
  return best_x;
}

}  // namespace

TEST_CASE("sweep spec validation") {
  CHECK_THROWS_AS(spec_for(SweepAxis::detuning, 1.0, 1.0, 5, Spacing::linear).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(spec_for(SweepAxis::detuning, 0.0, 1.0, 1, Spacing::linear).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(spec_for(SweepAxis::atom_number, 0.0, 1e6, 5, Spacing::logarithmic).validate(),
                  std::invalid_argument);
  CHECK_NOTHROW(spec_for(SweepAxis::atom_number, 1.0, 1e6, 5, Spacing::logarithmic).validate());
}

TEST_CASE("axis grids") {
  auto g = axis_grid(spec_for(SweepAxis::detuning, -3.7e8, 3.7e8, 101, Spacing::linear));
  REQUIRE(g.size() == 101);
  CHECK(g.front() == -3.7e8);
  CHECK(g.back() == 3.7e8);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(g[i] == -g[g.size() - 1 - i]);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);

  g = axis_grid(spec_for(SweepAxis::atom_number, 1e3, 1e9, 7, Spacing::logarithmic));
  CHECK(g.front() == 1e3);
  CHECK(g.back() == 1e9);
  CHECK(g[3] == doctest::Approx(1e6).epsilon(1e-12));
}

TEST_CASE("detuning sweep is even") {
  const SystemConfig cfg = reference_config();
  const ScanResult scan = run_sweep(spec_for(SweepAxis::detuning, -1e9, 1e9, 201, Spacing::linear));
  const auto eta = etas(scan);
  for (std::size_t i = 0; i < eta.size(); ++i) CHECK(eta[i] == eta[eta.size() - 1 - i]);
  CHECK(count_interior_maxima(eta) == 1);
  CHECK(scan.config_digest == config_digest(cfg));
  CHECK(scan.axis == SweepAxis::detuning);
}

TEST_CASE("waist sweep follows the inverse-square law") {
  const ScanResult scan =
      run_sweep(spec_for(SweepAxis::waist_mw, 5e-3, 5e-2, 40, Spacing::logarithmic));
  const double ref = scan.points[0].result->eta * scan.axis_values[0] * scan.axis_values[0];
  for (std::size_t i = 0; i < scan.points.size(); ++i) {
    const double w = scan.axis_values[i];
    CHECK(scan.points[i].result->eta * w * w == doctest::Approx(ref).epsilon(1e-12));
    if (i) CHECK(scan.points[i].result->eta < scan.points[i - 1].result->eta);
  }
}

TEST_CASE("atom-number sweep has one interior maximum near C = 1") {
  const ScanResult scan =
      run_sweep(spec_for(SweepAxis::atom_number, 1e3, 1e9, 241, Spacing::logarithmic));
  const auto eta = etas(scan);
  REQUIRE(count_interior_maxima(eta) == 1);
  const auto arg = static_cast<std::size_t>(std::max_element(eta.begin(), eta.end()) - eta.begin());
  CHECK(arg > 0);
  CHECK(arg + 1 < eta.size());
  const double c = scan.points[arg].result->cooperativity;
  const double resolution =
      std::max(std::abs(scan.points[arg + 1].result->cooperativity - c),
               std::abs(scan.points[arg - 1].result->cooperativity - c));
  CHECK(std::abs(c - 1.0) <= resolution);
}

TEST_CASE("atom-number moves honour the hold flags") {
  SystemConfig base = reference_config();
  base.gamma_r_prime = 100.0;
  base.kappa_opt_0 = 50.0;
  base.od_mean_override = 8.0;
  SystemConfig moved = apply_axis(base, SweepAxis::atom_number, 2e6);
  CHECK(moved.gamma_r_prime == 100.0);
  CHECK(moved.kappa_opt_0 == 50.0);
  CHECK(*moved.od_mean_override == 16.0);
  base.hold_gamma_r_prime = false;
  base.hold_kappa_opt_0 = false;
  moved = apply_axis(base, SweepAxis::atom_number, 2e6);
  CHECK(moved.gamma_r_prime == 200.0);
  CHECK(moved.kappa_opt_0 == 100.0);
}

TEST_CASE("sweep rows equal standalone calls") {
  const SweepSpec spec = spec_for(SweepAxis::rabi_drive, 1e6, 1e9, 33, Spacing::logarithmic);
  const ScanResult scan = run_sweep(spec);
  for (std::size_t i = 0; i < scan.points.size(); ++i) {
    const ConversionResult direct =
        evaluate_point(apply_axis(spec.base_config, spec.axis, scan.axis_values[i]));
    CHECK(scan.points[i].result->eta == direct.eta);
    CHECK(scan.points[i].result->cooperativity == direct.cooperativity);
    CHECK(scan.points[i].result->fwhm == direct.fwhm);
  }
}

TEST_CASE("parallel sweeps are bit-identical to sequential ones") {
  const SweepSpec spec = spec_for(SweepAxis::atom_number, 1e3, 1e9, 997, Spacing::logarithmic);
  const ScanResult a = run_sweep(spec, 1);
  for (unsigned threads : {2u, 3u, 8u}) {
    const ScanResult b = run_sweep(spec, threads);
    REQUIRE(b.points.size() == a.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
      CHECK(a.axis_values[i] == b.axis_values[i]);
      CHECK(a.points[i].result->eta == b.points[i].result->eta);
      CHECK(a.points[i].result->cooperativity == b.points[i].result->cooperativity);
    }
  }
}

TEST_CASE("per-point failures stay in band") {
  const ScanResult scan = run_sweep(spec_for(SweepAxis::atom_number, 0.25, 4.0, 16, Spacing::linear));
  std::size_t failed = 0;
  for (std::size_t i = 0; i < scan.points.size(); ++i) {
    if (scan.axis_values[i] < 1.0) {
      CHECK_FALSE(scan.points[i].ok());
      CHECK_FALSE(scan.points[i].error.empty());
      ++failed;
    } else {
      CHECK(scan.points[i].ok());
    }
  }
  CHECK(failed == 3);
}

TEST_CASE("scalar maximization") {
  SUBCASE("cooperativity with unit extraction") {
    const RateSet r = RateSet::from_rates(1.0, 1.0, 0.0, 1.0, 0.0);
    auto eta_of_c = [&](double c) { return efficiency_closed_form(0.0, std::sqrt(c), r).eta; };
    const ScalarOptimum opt = maximize_scalar(eta_of_c, 1e-3, 1e3, Spacing::logarithmic, 1e-8);
    CHECK(opt.x == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(opt.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(opt.boundary);
    CHECK_FALSE(opt.multimodal);
  }
  SUBCASE("boundary maximum is flagged") {
    const ScalarOptimum opt = maximize_scalar([](double x) { return x; }, 1.0, 2.0);
    CHECK(opt.boundary);
    CHECK(opt.x == 2.0);
  }
  SUBCASE("multimodal pre-scan degrades to grid argmax") {
    const ScalarOptimum opt = maximize_scalar([](double x) { return std::sin(x); }, 0.0, 20.0);
    CHECK(opt.multimodal);
    CHECK(std::sin(opt.x) > 0.99);
  }
  SUBCASE("plateau ties resolve to the smallest argument") {
    const ScalarOptimum opt = maximize_scalar([](double x) { return std::min(x, 5.0); }, 0.0, 7.9);
    CHECK(opt.value == 5.0);
    CHECK(opt.x == doctest::Approx(5.0).epsilon(1e-5));
  }
  SUBCASE("refined value is never below the pre-scan") {
    auto f = [](double x) { return -std::pow(x - 0.3, 2); };
    const ScalarOptimum opt = maximize_scalar(f, -1.0, 1.0);
    for (int i = 0; i < 64; ++i) CHECK(opt.value >= f(-1.0 + 2.0 * i / 63.0));
    CHECK(opt.x == doctest::Approx(0.3).epsilon(1e-6));
  }
}

TEST_CASE("maximize over detuning and atom number") {
  AxisOptimum opt = maximize_over_axis(spec_for(SweepAxis::detuning, -1e9, 1e9, 64, Spacing::linear));
  // The peak is quadratic, so its position is only resolved to about sqrt(eps) * kappa.
  const double kappa = build_rate_set(reference_config()).kappa_opt_total;
  CHECK(std::abs(opt.axis_value) < 1e-6 * kappa);

  SystemConfig base = reference_config();
  const double lo = 1e3;
  const double hi = 1e10;
  opt = maximize_over_axis(spec_for(SweepAxis::atom_number, lo, hi, 64, Spacing::logarithmic, base));
  base.rabi_drive *= 2.0;
  const AxisOptimum opt2 =
      maximize_over_axis(spec_for(SweepAxis::atom_number, lo, hi, 64, Spacing::logarithmic, base));
  CHECK(opt2.axis_value > opt.axis_value);
  CHECK(opt.cooperativity == doctest::Approx(1.0).epsilon(1e-5));

  const double dense1 = dense_argmax_atoms(reference_config(), lo, hi, 20001);
  const double dense2 = dense_argmax_atoms(base, lo, hi, 20001);
  CHECK(dense2 > dense1);
  const double step = std::pow(hi / lo, 1.0 / 20000.0);
  CHECK(opt.axis_value / dense1 == doctest::Approx(1.0).epsilon(step - 1.0));
  CHECK(opt2.axis_value / dense2 == doctest::Approx(1.0).epsilon(step - 1.0));
}

TEST_CASE("optimum is stable under a tighter tolerance") {
  const SweepSpec spec = spec_for(SweepAxis::rabi_drive, 1e6, 1e9, 64, Spacing::logarithmic);
  const double tol = 1e-6;
  const AxisOptimum a = maximize_over_axis(spec, tol);
  const AxisOptimum b = maximize_over_axis(spec, tol / 10.0);
  CHECK(std::abs(a.axis_value - b.axis_value) < tol * std::abs(a.axis_value));
}

TEST_CASE("bound curve") {
  const double lambda = 7e-3;
  const double w_lim = 2.0 * lambda / std::numbers::pi;
  const BoundCurve c = bound_curve(lambda, w_lim, 10.0 * lambda, 50);
  CHECK(std::abs(c.eta_bound.front() - 0.1875) <= 1e-15);
  CHECK_FALSE(c.forbidden.front());
  for (std::size_t i = 1; i < c.waists.size(); ++i) CHECK(c.eta_bound[i] < c.eta_bound[i - 1]);

  const BoundCurve wide = bound_curve(lambda, 0.5 * w_lim, lambda, 101);
  for (std::size_t i = 0; i < wide.waists.size(); ++i) {
    CHECK(wide.forbidden[i] == (wide.waists[i] < w_lim));
  }
  const BoundCurve at_lambda = bound_curve(lambda, 0.5 * lambda, lambda, 3);
  CHECK(at_lambda.eta_bound.back() == doctest::Approx(0.0759908877317533).epsilon(1e-14));
  CHECK_THROWS_AS(bound_curve(lambda, 0.0, 1.0, 10), std::invalid_argument);
}
