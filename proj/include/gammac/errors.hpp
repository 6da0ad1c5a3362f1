#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gammac {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
  explicit DivisionByZero(const std::string& what) : Error(what) {}
};

class TowerMismatch : public Error {
 public:
  TowerMismatch() : Error("operands belong to different towers") {}
};

/// Raised when a numeric evaluation lands on (or numerically next to) a pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Lexical or syntactic error; `offset` is the 0-based byte offset in the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace gammac
