#pragma once

#include <stdexcept>
#include <string>

namespace qca {

/// Bad input to a library call: malformed config, wrong dimensions, non-finite angles.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested problem size exceeds the configured implementation cap.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Numerical routine failed (eigensolver did not converge, etc).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qca
