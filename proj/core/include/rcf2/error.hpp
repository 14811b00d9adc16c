#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rcf2 {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands with incompatible shapes (rows, columns, lengths).
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A size bound of an exhaustive routine was exceeded. The message names the bound.
class BoundError : public Error {
 public:
  using Error::Error;
};

/// Any other violated precondition (unknown name, zero vector where a non-zero one is needed, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace rcf2
