#pragma once

#include <stdexcept>
#include <string>

namespace adaptmul {

/// Bad argument to a library call (out-of-domain value, violated precondition).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A result or intermediate would not fit: dense length above the model cap,
/// or an exponent sum overflowing a machine word.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed polynomial or instance text.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace adaptmul
