#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace streampack {

/// Base of every error raised by the library. The CLI maps ConfigError to
/// exit code 2 and everything else to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A stream value violates the domain of the consuming operation.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A parameter (epsilon, machine count, ...) is outside its admissible range.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class EmptySummaryError : public Error {
 public:
  using Error::Error;
};

/// An exact oracle was asked to solve an instance above its item limit.
class OracleScaleError : public Error {
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

}  // namespace streampack
