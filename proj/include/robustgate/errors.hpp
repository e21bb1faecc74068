#pragma once

#include <stdexcept>
#include <string>

namespace robustgate {

/// Bad input to an operation: broken precondition, malformed file, invalid config.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical breakdown: non-finite values, branch cuts, degenerate pulses.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace robustgate
