#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace curvkit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text; `position` is the 0-based character offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Division by an expression that is identically zero.
class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// Invalid user input: bad metric definition, unknown catalog id, index out of range.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace curvkit

namespace curvkit {

/// A sample point where the metric or a denominator degenerates; resample.
class DegeneratePoint : public DivisionByZero {
 public:
  using DivisionByZero::DivisionByZero;
};

}  // namespace curvkit
