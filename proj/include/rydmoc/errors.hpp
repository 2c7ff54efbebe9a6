#pragma once

#include <stdexcept>

namespace rydmoc {

/// A linear response problem with no dissipation and no detuning to regularize it.
class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rydmoc
