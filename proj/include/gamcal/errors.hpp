#pragma once

#include <stdexcept>
#include <string>

namespace gamcal {

// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid user-facing input: malformed config, bad schema, out-of-range knobs.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

// An iterative solve stopped before reaching the requested tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last_residual, int iterations)
      : Error(what), last_residual(last_residual), iterations(iterations) {}

  double last_residual;
  int iterations;
};

}  // namespace gamcal
