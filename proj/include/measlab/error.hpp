#pragma once

#include <stdexcept>
#include <string>

namespace measlab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Objects living on different spaces, or a set reaching outside its space.
class DomainMismatch : public Error {
 public:
  using Error::Error;
};

/// Precondition violated by an argument (negative scale, empty ring, bad box).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Non-finite integrand values on a region of positive mass.
class IntegrabilityFailure : public Error {
 public:
  using Error::Error;
};

/// An integrand threw; the message names the evaluation point.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// Interval-valued integral whose lower endpoint exceeds the upper endpoint.
class RepresentationError : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

/// Malformed scenario or literal; carries the 1-based line/column when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0)
      : Error(line > 0 ? what + " (line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ")"
                       : what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace measlab
