#include "rydmoc/cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "rydmoc/config_io.hpp"
#include "rydmoc/conversion.hpp"
#include "rydmoc/coupling_rates.hpp"
#include "rydmoc/manifest.hpp"
#include "rydmoc/scattering.hpp"
#include "rydmoc/sweep.hpp"
#include "rydmoc/table.hpp"
#include "rydmoc/units.hpp"

namespace rydmoc {
namespace {

/// Input that parsed but cannot be evaluated.
struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Diagnostics {
 public:
  explicit Diagnostics(std::ostream& err) : err_(err) {
    color_ = &err == &std::cerr && ::isatty(STDERR_FILENO) && std::getenv("NO_COLOR") == nullptr;
  }
  void warning(const std::string& msg) { emit("warning", "\033[33m", msg); }
  void error(const std::string& msg) { emit("error", "\033[31m", msg); }

 private:
  void emit(const char* tag, const char* ansi, const std::string& msg) {
    if (color_) {
      err_ << ansi << tag << ":\033[0m " << msg << '\n';
    } else {
      err_ << tag << ": " << msg << '\n';
    }
  }
  std::ostream& err_;
  bool color_ = false;
};

struct CommonOptions {
  std::string config;
  std::string format = "csv";
  std::string out_path;
  bool lenient = false;
};

void add_common(CLI::App* sub, CommonOptions& opts, bool config_required) {
  auto* cfg = sub->add_option("--config", opts.config, "JSON system configuration");
  if (config_required) cfg->required();
  cfg->check(CLI::ExistingFile);
  sub->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--out", opts.out_path, "Output file (default stdout)");
  sub->add_flag("--lenient", opts.lenient, "Warn instead of failing on unknown config keys");
}

class Runner {
 public:
  Runner(const CommonOptions& opts, std::string command, std::ostream& out, Diagnostics& diag)
      : opts_(opts), command_(std::move(command)), out_(out), diag_(diag) {}

  /// Parses --config, reports regime warnings, and raises on a failed check.
  SystemConfig load_config() {
    ParsedConfig parsed = parse_config(opts_.config, ParseOptions{opts_.lenient});
    for (const auto& w : parsed.warnings) diag_.warning(w);
    const ValidationReport report = validate_regime(parsed.config);
    for (const CheckResult& c : report.checks) {
      if (c.status == CheckStatus::warn) diag_.warning(c.name + ": " + c.message);
    }
    if (report.has_failure()) {
      for (const CheckResult& c : report.checks) {
        if (c.status == CheckStatus::fail) diag_.error(c.name + ": " + c.message);
      }
      throw ValidationFailure("configuration failed regime validation");
    }
    digest_ = config_digest(parsed.config);
    return parsed.config;
  }

  ParsedConfig load_config_unchecked() {
    ParsedConfig parsed = parse_config(opts_.config, ParseOptions{opts_.lenient});
    for (const auto& w : parsed.warnings) diag_.warning(w);
    digest_ = config_digest(parsed.config);
    return parsed;
  }

  void emit(const Table& table) {
    std::ostringstream body;
    if (opts_.format == "json") {
      body << to_json(table).dump(2) << '\n';
    } else {
      write_csv(table, body);
    }
    if (opts_.out_path.empty()) {
      out_ << body.str();
      out_.flush();
      return;
    }
    {
      std::ofstream file(opts_.out_path, std::ios::binary | std::ios::trunc);
      if (!file) throw std::runtime_error("cannot open output '" + opts_.out_path + "'");
      file << body.str();
      if (!file) throw std::runtime_error("failed writing output '" + opts_.out_path + "'");
    }
    RunManifest manifest{tool_version(), digest_, command_,
                         rfc3339_utc(std::chrono::system_clock::now()), {opts_.out_path}};
    write_manifest(manifest, manifest_path_for(opts_.out_path));
  }

 private:
  const CommonOptions& opts_;
  std::string command_;
  std::ostream& out_;
  Diagnostics& diag_;
  std::string digest_;
};

std::string join_args(const std::vector<std::string>& args) {
  std::string s;
  for (const auto& a : args) {
    if (!s.empty()) s += ' ';
    s += a;
  }
  return s;
}

double axis_input_to_internal(SweepAxis axis, double value) {
  // Frequency axes are given in Hz on the command line.
  return axis == SweepAxis::detuning || axis == SweepAxis::rabi_drive
             ? from_ordinary_frequency(value)
             : value;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Diagnostics diag(err);
  CLI::App app{"Microwave-to-optical conversion efficiency in atomic ensembles", "rydmoc"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", tool_version());

  CommonOptions common;

  auto* rates_cmd = app.add_subcommand("rates", "Collective rates and extraction factors");
  add_common(rates_cmd, common, true);

  auto* bound_cmd = app.add_subcommand("bound", "Diffraction-limited efficiency bound");
  add_common(bound_cmd, common, false);
  std::optional<double> bound_lambda, bound_waist, bound_wmin, bound_wmax;
  std::size_t bound_points = 101;
  bool bound_log = false;
  bound_cmd->add_option("--lambda-mw", bound_lambda, "Microwave wavelength (m)")
      ->check(CLI::PositiveNumber);
  bound_cmd->add_option("--waist", bound_waist, "Single beam waist (m)")
      ->check(CLI::PositiveNumber);
  auto* wmin = bound_cmd->add_option("--waist-min", bound_wmin, "Curve start (m)")
                   ->check(CLI::PositiveNumber);
  auto* wmax = bound_cmd->add_option("--waist-max", bound_wmax, "Curve end (m)")
                   ->check(CLI::PositiveNumber);
  wmin->needs(wmax);
  wmax->needs(wmin);
  bound_cmd->add_option("--points", bound_points, "Curve points")
      ->check(CLI::Range(std::size_t{2}, std::size_t{10000000}))
      ->capture_default_str();
  bound_cmd->add_flag("--log", bound_log, "Logarithmic waist spacing");

  auto* eff_cmd = app.add_subcommand("efficiency", "Conversion efficiency at one detuning");
  add_common(eff_cmd, common, true);
  std::optional<double> eff_delta_hz;
  std::string eff_method = "closed_form";
  std::string eff_direction = "mw_to_opt";
  eff_cmd->add_option("--delta-hz", eff_delta_hz, "Optical detuning (Hz); default from config");
  eff_cmd->add_option("--method", eff_method)
      ->check(CLI::IsMember({"closed_form", "numeric"}))
      ->capture_default_str();
  eff_cmd->add_option("--direction", eff_direction, "Numeric method only")
      ->check(CLI::IsMember({"mw_to_opt", "opt_to_mw"}))
      ->capture_default_str();

  auto* spec_cmd = app.add_subcommand("spectrum", "Microwave reflection/transmission spectrum");
  add_common(spec_cmd, common, true);
  double spec_lo_hz = -50e6;
  double spec_hi_hz = 50e6;
  std::size_t spec_points = 201;
  std::string spec_channels = "bidirectional";
  spec_cmd->add_option("--offset-min-hz", spec_lo_hz, "Grid start relative to omega_s (Hz)")
      ->capture_default_str();
  spec_cmd->add_option("--offset-max-hz", spec_hi_hz, "Grid end relative to omega_s (Hz)")
      ->capture_default_str();
  spec_cmd->add_option("--points", spec_points)
      ->check(CLI::Range(std::size_t{1}, std::size_t{10000000}))
      ->capture_default_str();
  spec_cmd->add_option("--channels", spec_channels)
      ->check(CLI::IsMember({"bidirectional", "single"}))
      ->capture_default_str();

  const std::vector<std::string> axes{"detuning", "atom_number", "rabi_drive", "waist_mw"};

  auto* sweep_cmd = app.add_subcommand("sweep", "One-parameter sweep of the efficiency");
  add_common(sweep_cmd, common, true);
  std::string sweep_axis;
  double sweep_min = 0.0;
  double sweep_max = 0.0;
  std::size_t sweep_points = 101;
  bool sweep_log = false;
  unsigned sweep_threads = 1;
  sweep_cmd->add_option("--axis", sweep_axis)->required()->check(CLI::IsMember(axes));
  sweep_cmd->add_option("--min", sweep_min, "Axis start (Hz for frequency axes)")->required();
  sweep_cmd->add_option("--max", sweep_max, "Axis end (Hz for frequency axes)")->required();
  sweep_cmd->add_option("--points", sweep_points)
      ->check(CLI::Range(std::size_t{2}, std::size_t{10000000}))
      ->capture_default_str();
  sweep_cmd->add_flag("--log", sweep_log, "Logarithmic spacing");
  sweep_cmd->add_option("--threads", sweep_threads)
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();

  auto* opt_cmd = app.add_subcommand("optimize", "Maximize the efficiency along one axis");
  add_common(opt_cmd, common, true);
  std::string opt_axis;
  double opt_min = 0.0;
  double opt_max = 0.0;
  bool opt_log = false;
  double opt_tol = 1e-6;
  opt_cmd->add_option("--axis", opt_axis)->required()->check(CLI::IsMember(axes));
  opt_cmd->add_option("--min", opt_min, "Axis start (Hz for frequency axes)")->required();
  opt_cmd->add_option("--max", opt_max, "Axis end (Hz for frequency axes)")->required();
  opt_cmd->add_flag("--log", opt_log, "Logarithmic pre-scan and search");
  opt_cmd->add_option("--tol", opt_tol, "Relative tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* val_cmd = app.add_subcommand("validate", "Regime checks for a configuration");
  add_common(val_cmd, common, true);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();  // program name
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    diag.error(e.what());
    auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.back()->help());
    return kExitUsage;
  }

  Runner run(common, join_args(args), out, diag);
  try {
    if (*rates_cmd) {
      run.emit(to_table(build_rate_set(run.load_config())));
    } else if (*bound_cmd) {
      std::optional<SystemConfig> cfg;
      if (!common.config.empty()) cfg = run.load_config_unchecked().config;
      if (!bound_lambda && cfg) bound_lambda = cfg->lambda_mw;
      if (!bound_lambda) {
        diag.error("bound needs --lambda-mw or --config");
        return kExitUsage;
      }
      if (bound_wmin) {
        if (!(*bound_wmin < *bound_wmax)) {
          diag.error("--waist-min must be smaller than --waist-max");
          return kExitUsage;
        }
        run.emit(to_table(bound_curve(*bound_lambda, *bound_wmin, *bound_wmax, bound_points,
                                      bound_log ? Spacing::logarithmic : Spacing::linear)));
      } else {
        if (!bound_waist && cfg) bound_waist = cfg->waist_mw;
        if (!bound_waist) {
          diag.error("bound needs --waist, --waist-min/--waist-max or --config");
          return kExitUsage;
        }
        const EfficiencyBound b = efficiency_upper_bound(*bound_lambda, *bound_waist);
        BoundCurve row{*bound_lambda, {*bound_waist}, {b.eta_bound}, {b.diffraction_forbidden}};
        run.emit(to_table(row));
      }
    } else if (*eff_cmd) {
      const SystemConfig cfg = run.load_config();
      const double delta = eff_delta_hz ? from_ordinary_frequency(*eff_delta_hz) : cfg.detuning;
      const RateSet rates = build_rate_set(cfg);
      const ConversionResult res =
          eff_method == "numeric"
              ? efficiency_numeric(delta, cfg.rabi_drive, rates,
                                   eff_direction == "opt_to_mw" ? Direction::opt_to_mw
                                                                : Direction::mw_to_opt)
              : efficiency_closed_form(delta, cfg.rabi_drive, rates);
      run.emit(to_table(delta, res));
    } else if (*spec_cmd) {
      const SystemConfig cfg = run.load_config();
      if (spec_points > 1 && !(spec_lo_hz < spec_hi_hz)) {
        diag.error("--offset-min-hz must be smaller than --offset-max-hz");
        return kExitUsage;
      }
      const RateSet rates = build_rate_set(cfg);
      const ChannelSet channels = spec_channels == "single" ? ChannelSet::single_direction(rates)
                                                            : ChannelSet::bidirectional_gaussian(rates);
      SweepSpec grid_spec;
      grid_spec.min = from_ordinary_frequency(spec_lo_hz);
      grid_spec.max = from_ordinary_frequency(spec_hi_hz);
      grid_spec.points = std::max<std::size_t>(spec_points, 2);
      std::vector<double> grid = axis_grid(grid_spec);
      if (spec_points == 1) grid = {grid.front()};
      for (double& w : grid) w += cfg.omega_s;
      run.emit(to_table(mw_spectrum(cfg, channels, grid)));
    } else if (*sweep_cmd) {
      SweepSpec spec;
      spec.axis = *parse_axis(sweep_axis);
      spec.min = axis_input_to_internal(spec.axis, sweep_min);
      spec.max = axis_input_to_internal(spec.axis, sweep_max);
      spec.points = sweep_points;
      spec.spacing = sweep_log ? Spacing::logarithmic : Spacing::linear;
      try {
        spec.validate();
      } catch (const std::invalid_argument& e) {
        diag.error(e.what());
        return kExitUsage;
      }
      spec.base_config = run.load_config();
      const ScanResult scan = run_sweep(spec, sweep_threads);
      for (std::size_t i = 0; i < scan.points.size(); ++i) {
        if (!scan.points[i].ok()) {
          diag.warning("point " + std::to_string(i) + " failed: " + scan.points[i].error);
        }
      }
      run.emit(to_table(scan));
    } else if (*opt_cmd) {
      SweepSpec spec;
      spec.axis = *parse_axis(opt_axis);
      spec.min = axis_input_to_internal(spec.axis, opt_min);
      spec.max = axis_input_to_internal(spec.axis, opt_max);
      spec.points = kPrescanPoints;
      spec.spacing = opt_log ? Spacing::logarithmic : Spacing::linear;
      try {
        spec.validate();
      } catch (const std::invalid_argument& e) {
        diag.error(e.what());
        return kExitUsage;
      }
      spec.base_config = run.load_config();
      const AxisOptimum opt = maximize_over_axis(spec, opt_tol);
      if (opt.boundary) diag.warning("maximum lies on the range boundary");
      if (opt.multimodal) diag.warning("several local maxima found; returning grid argmax");
      run.emit(to_table(spec.axis, opt));
    } else if (*val_cmd) {
      const ParsedConfig parsed = run.load_config_unchecked();
      const ValidationReport report = validate_regime(parsed.config);
      run.emit(to_table(report));
      return report.has_failure() ? kExitValidationFailure : kExitOk;
    }
  } catch (const ValidationFailure& e) {
    diag.error(e.what());
    return kExitValidationFailure;
  } catch (const std::exception& e) {
    diag.error(e.what());
    return kExitValidationFailure;
  }
  return kExitOk;
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace rydmoc
