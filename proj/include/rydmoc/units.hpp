#pragma once

#include <numbers>

namespace rydmoc {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

/// Converts an ordinary frequency (Hz) to an angular rate (rad/s).
/// Throws std::invalid_argument for non-finite input.
double from_ordinary_frequency(double hz);

/// Inverse of from_ordinary_frequency.
double to_ordinary_frequency(double rad_per_s);

}  // namespace rydmoc
