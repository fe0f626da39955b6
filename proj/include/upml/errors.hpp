#pragma once

#include <stdexcept>
#include <string>

namespace upml {

// Invalid or inconsistent configuration input. CLI exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A computation left the representable range (NaN/Inf, degenerate
// geometry, unstable step). CLI exit code 2.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A sampled invariant or requested consistency check failed. CLI exit code 3.
struct CheckError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File could not be read or written. CLI exit code 4.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace upml
