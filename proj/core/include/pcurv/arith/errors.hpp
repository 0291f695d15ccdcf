#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pcurv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Division by zero, mixed coefficient fields, non-invertible elements.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

/// A prime at which the input does not reduce.
class BadPrimeError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Raised by the expression grammar. `column` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t column, const std::string& message)
      : Error("column " + std::to_string(column) + ": " + message), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

}  // namespace pcurv
