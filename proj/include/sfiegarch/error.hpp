#pragma once

#include <stdexcept>
#include <string>

namespace sfg {

/// Raised when inputs violate a model or data precondition (CLI exit code 2).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computation cannot produce a finite answer (CLI exit code 3).
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sfg
