#pragma once

#include <stdexcept>
#include <string>

namespace lsplp {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A structural invariant of an input object does not hold.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its domain (inadmissible strategy,
// divergent walk series, cap exceeded, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  SingularMatrixError() : Error("singular matrix") {}
};

class DivisionByZeroError : public Error {
 public:
  DivisionByZeroError() : Error("division by zero") {}
};

// Raised when an internal consistency check fails. Seeing one means a bug
// or an input that violates nondegeneracy.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace lsplp
