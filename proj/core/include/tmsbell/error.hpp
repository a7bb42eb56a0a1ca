#pragma once

#include <stdexcept>
#include <string>

namespace tmsbell {

/// Thrown when an argument violates a documented precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical oracle cannot deliver a trustworthy answer
/// (insufficient cutoff, degenerate quadrature kernel, ...).
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tmsbell
