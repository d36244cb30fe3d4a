#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vfdt {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input: schema headers, CSV rows, tree files, config files.
/// `line()` is 1-based, or 0 when the input has no line structure.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An instance or dataset that does not conform to the schema it is used with.
class SchemaError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace vfdt
