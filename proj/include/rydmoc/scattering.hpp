#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "rydmoc/coupling_rates.hpp"
#include "rydmoc/errors.hpp"

namespace rydmoc {

using Complex = std::complex<double>;

enum class ChannelKind { collected, uncollected };

struct Channel {
  std::string label;
  double gamma = 0.0;  ///< emission rate of the super-atom into this channel (rad/s)
  ChannelKind kind = ChannelKind::collected;
};

inline constexpr std::string_view kForwardChannel = "forward";
inline constexpr std::string_view kBackwardChannel = "backward";
inline constexpr std::string_view kRemainderChannel = "remainder";

/**
 * Radiative channels of the super-atom. The collective emission rate gamma_R
 * is by construction the sum of the channel rates; gamma_r_prime is the
 * extra decay that leaves the model.
 */
class ChannelSet {
 public:
  /// Channels taken as given; gamma_R becomes their sum. Throws on negative rates.
  ChannelSet(std::vector<Channel> channels, double gamma_r_prime);

  /// Collected channels plus one uncollected remainder carrying gamma_R - sum.
  /// The remainder is omitted when it vanishes to 1e-12 relative; a negative
  /// remainder beyond that tolerance is an error.
  static ChannelSet with_remainder(std::vector<Channel> collected, double gamma_R,
                                   double gamma_r_prime);

  /// Forward and backward Gaussian channels, each at gamma_mw_1.
  static ChannelSet bidirectional_gaussian(const RateSet& rates);

  /// A single Gaussian channel at gamma_mw_1 (literal one-port reading of r_mw / t_mw).
  static ChannelSet single_direction(const RateSet& rates);

  [[nodiscard]] std::span<const Channel> channels() const { return channels_; }
  [[nodiscard]] std::size_t size() const { return channels_.size(); }
  [[nodiscard]] double gamma_R() const { return gamma_R_; }
  [[nodiscard]] double gamma_r_prime() const { return gamma_r_prime_; }
  /// gamma_r_prime + sum of channel rates.
  [[nodiscard]] double total_decay() const { return gamma_r_prime_ + gamma_R_; }
  [[nodiscard]] std::optional<std::size_t> index_of(std::string_view label) const;

 private:
  std::vector<Channel> channels_;
  double gamma_R_ = 0.0;
  double gamma_r_prime_ = 0.0;
};

/// Steady-state super-atom amplitude under channel inputs at frequency omega.
/// Throws SingularSystemError when the denominator vanishes.
Complex steady_state_amplitude(double omega, double omega_s, const ChannelSet& channels,
                               std::span<const Complex> inputs);

/// b_out,p = b_in,p - i sqrt(2 gamma_p) S(omega) for every channel.
std::vector<Complex> output_fields(double omega, double omega_s, const ChannelSet& channels,
                                   std::span<const Complex> inputs);

/// Full n x n channel scattering matrix, b_out = M b_in.
Eigen::MatrixXcd scattering_matrix(double omega, double omega_s, const ChannelSet& channels);

/// (sum |b_out|^2 + 2 gamma_r_prime |S|^2 - sum |b_in|^2) / sum |b_in|^2; 0 for zero input.
double energy_residual(double omega, double omega_s, const ChannelSet& channels,
                       std::span<const Complex> inputs);

struct Spectrum {
  std::vector<double> omega_grid;
  std::map<std::string, std::vector<Complex>> quantities;
};

/**
 * Reflection, transmission and super-atom amplitude for a unit input in the
 * forward channel. With a backward channel present, r_mw is its output;
 * otherwise r_mw = sqrt(2 gamma_fwd) S, the one-port expression.
 * The grid must be non-empty and strictly increasing.
 */
Spectrum mw_spectrum(const SystemConfig& cfg, const ChannelSet& channels,
                     std::span<const double> omega_grid);

}  // namespace rydmoc
