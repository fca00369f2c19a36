#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace finvar {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed formula text. position is a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Unknown relation names or arity mismatches against a signature.
class SignatureError : public Error {
 public:
  using Error::Error;
};

// Arity, universe size or coordinate out of range for the ambient space.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// JSON documents that do not follow the expected layout.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace finvar
