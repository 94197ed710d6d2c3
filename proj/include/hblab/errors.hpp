#pragma once

#include <stdexcept>
#include <string>

namespace hblab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in spaces of different dimension.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A precondition on the inputs does not hold (user error).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A functional/seminorm pair whose dual gauge is infinite.
class InvalidPairError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Malformed text input; carries a position when one is known.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(line ? what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"
                   : what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// An internal consistency check failed. Indicates a bug, never bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

inline void require_dim(std::size_t got, std::size_t expected, const char* what) {
  if (got != expected) {
    throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(expected) + ", got " +
                         std::to_string(got));
  }
}

}  // namespace hblab
