#pragma once

#include <stdexcept>
#include <string>

namespace ocw {

/// Raised when a caller violates an operation's precondition
/// (bad sample size, observation date before the data, empty input).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for unreadable or malformed input data.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ocw
