#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chaingraph {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based, or 0 when the input has no
/// line structure (e.g. a hex string).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

class DecodeError : public Error {
 public:
  using Error::Error;
};

class NotAContractError : public Error {
 public:
  using Error::Error;
};

/// A remote source (ABI provider, enrichment API) could not be reached.
class TransportError : public Error {
 public:
  using Error::Error;
};

}  // namespace chaingraph
