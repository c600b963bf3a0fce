#pragma once

#include <stdexcept>
#include <string>

namespace approxrec {

// Invalid parameters or inputs supplied by a caller.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An exact or exhaustive routine was asked for an instance beyond its cap.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// p or q sits where the log-odds weight is undefined (0 or 1/2). Callers
// should switch to the hard-constraint or edge-only formulation.
class DegenerateNoiseError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

}  // namespace approxrec
