#include "rydmoc/units.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rydmoc {

double from_ordinary_frequency(double hz) {
  if (!std::isfinite(hz)) {
    throw std::invalid_argument("from_ordinary_frequency: non-finite input " + std::to_string(hz));
  }
  return kTwoPi * hz;
}

double to_ordinary_frequency(double rad_per_s) {
  if (!std::isfinite(rad_per_s)) {
    throw std::invalid_argument("to_ordinary_frequency: non-finite input " +
                                std::to_string(rad_per_s));
  }
  return rad_per_s / kTwoPi;
}

}  // namespace rydmoc
