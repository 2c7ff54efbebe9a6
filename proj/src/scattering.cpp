#include "rydmoc/scattering.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rydmoc {
namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kSumRuleTolerance = 1e-12;

void check_inputs(const ChannelSet& channels, std::span<const Complex> inputs) {
  if (inputs.size() != channels.size()) {
    throw std::invalid_argument("expected " + std::to_string(channels.size()) +
                                " channel inputs, got " + std::to_string(inputs.size()));
  }
}

Complex denominator(double omega, double omega_s, const ChannelSet& channels) {
  const Complex d = -kI * (omega - omega_s) + channels.total_decay();
  if (d == Complex{0.0, 0.0}) {
    throw SingularSystemError("super-atom response is singular: no decay and omega == omega_s");
  }
  return d;
}

}  // namespace

ChannelSet::ChannelSet(std::vector<Channel> channels, double gamma_r_prime)
    : channels_(std::move(channels)), gamma_r_prime_(gamma_r_prime) {
  if (!(gamma_r_prime >= 0.0) || !std::isfinite(gamma_r_prime)) {
    throw std::invalid_argument("gamma_r_prime must be non-negative");
  }
  for (const Channel& c : channels_) {
    if (!(c.gamma >= 0.0) || !std::isfinite(c.gamma)) {
      throw std::invalid_argument("channel '" + c.label + "' has invalid rate " +
                                  std::to_string(c.gamma));
    }
    gamma_R_ += c.gamma;
  }
}

ChannelSet ChannelSet::with_remainder(std::vector<Channel> collected, double gamma_R,
                                      double gamma_r_prime) {
  double collected_sum = 0.0;
  for (const Channel& c : collected) collected_sum += c.gamma;
  const double residual = gamma_R - collected_sum;
  const double tol = kSumRuleTolerance * gamma_R;
  if (residual < -tol) {
    throw std::invalid_argument("collected channel rates (" + std::to_string(collected_sum) +
                                ") exceed the collective rate gamma_R (" +
                                std::to_string(gamma_R) + ")");
  }
  if (residual > tol) {
    collected.push_back({std::string(kRemainderChannel), residual, ChannelKind::uncollected});
  }
  return ChannelSet(std::move(collected), gamma_r_prime);
}

ChannelSet ChannelSet::bidirectional_gaussian(const RateSet& rates) {
  return with_remainder({{std::string(kForwardChannel), rates.gamma_mw_1, ChannelKind::collected},
                         {std::string(kBackwardChannel), rates.gamma_mw_1, ChannelKind::collected}},
                        rates.gamma_R, rates.gamma_r_prime);
}

ChannelSet ChannelSet::single_direction(const RateSet& rates) {
  return with_remainder({{std::string(kForwardChannel), rates.gamma_mw_1, ChannelKind::collected}},
                        rates.gamma_R, rates.gamma_r_prime);
}

std::optional<std::size_t> ChannelSet::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < channels_.size(); ++i) {
    if (channels_[i].label == label) return i;
  }
  return std::nullopt;
}

Complex steady_state_amplitude(double omega, double omega_s, const ChannelSet& channels,
                               std::span<const Complex> inputs) {
  check_inputs(channels, inputs);
  Complex drive{0.0, 0.0};
  const auto chans = channels.channels();
  for (std::size_t p = 0; p < chans.size(); ++p) {
    drive += std::sqrt(2.0 * chans[p].gamma) * inputs[p];
  }
  return -kI * drive / denominator(omega, omega_s, channels);
}

std::vector<Complex> output_fields(double omega, double omega_s, const ChannelSet& channels,
                                   std::span<const Complex> inputs) {
  const Complex s = steady_state_amplitude(omega, omega_s, channels, inputs);
  const auto chans = channels.channels();
  std::vector<Complex> out(chans.size());
  for (std::size_t p = 0; p < chans.size(); ++p) {
    out[p] = inputs[p] - kI * std::sqrt(2.0 * chans[p].gamma) * s;
  }
  return out;
}

Eigen::MatrixXcd scattering_matrix(double omega, double omega_s, const ChannelSet& channels) {
  const auto n = static_cast<Eigen::Index>(channels.size());
  const Complex d = denominator(omega, omega_s, channels);
  const auto chans = channels.channels();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
  for (Eigen::Index q = 0; q < n; ++q) {
    for (Eigen::Index p = 0; p < n; ++p) {
      m(q, p) -= 2.0 * std::sqrt(chans[q].gamma * chans[p].gamma) / d;
    }
  }
  return m;
}

double energy_residual(double omega, double omega_s, const ChannelSet& channels,
                       std::span<const Complex> inputs) {
  check_inputs(channels, inputs);
  double p_in = 0.0;
  for (const Complex& b : inputs) p_in += std::norm(b);
  if (p_in == 0.0) return 0.0;
  const Complex s = steady_state_amplitude(omega, omega_s, channels, inputs);
  double p_out = 0.0;
  for (const Complex& b : output_fields(omega, omega_s, channels, inputs)) p_out += std::norm(b);
  const double absorbed = 2.0 * channels.gamma_r_prime() * std::norm(s);
  return (p_out + absorbed - p_in) / p_in;
}

Spectrum mw_spectrum(const SystemConfig& cfg, const ChannelSet& channels,
                     std::span<const double> omega_grid) {
  if (omega_grid.empty()) {
    throw std::invalid_argument("mw_spectrum: frequency grid is empty");
  }
  for (std::size_t i = 1; i < omega_grid.size(); ++i) {
    if (!(omega_grid[i] > omega_grid[i - 1])) {
      throw std::invalid_argument("mw_spectrum: frequency grid must be strictly increasing");
    }
  }
  const auto fwd = channels.index_of(kForwardChannel);
  if (!fwd) {
    throw std::invalid_argument("mw_spectrum: channel set has no 'forward' channel");
  }
  const auto bwd = channels.index_of(kBackwardChannel);
  const double g_fwd = channels.channels()[*fwd].gamma;

  std::vector<Complex> inputs(channels.size(), Complex{0.0, 0.0});
  inputs[*fwd] = 1.0;

  Spectrum spec;
  spec.omega_grid.assign(omega_grid.begin(), omega_grid.end());
  auto& r = spec.quantities["r_mw"];
  auto& t = spec.quantities["t_mw"];
  auto& s = spec.quantities["S"];
  r.reserve(omega_grid.size());
  t.reserve(omega_grid.size());
  s.reserve(omega_grid.size());
  for (double omega : omega_grid) {
    const Complex amp = steady_state_amplitude(omega, cfg.omega_s, channels, inputs);
    const Complex scattered = -kI * std::sqrt(2.0 * g_fwd) * amp;
    s.push_back(amp);
    t.push_back(1.0 + scattered);
    if (bwd) {
      r.push_back(-kI * std::sqrt(2.0 * channels.channels()[*bwd].gamma) * amp);
    } else {
      r.push_back(std::sqrt(2.0 * g_fwd) * amp);
    }
  }
  return spec;
}

}  // namespace rydmoc
