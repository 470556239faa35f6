#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace citind {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invalid input data. Carries the 1-based line number when known.
class InputError : public Error {
 public:
  InputError(const std::string& message, std::size_t line = 0)
      : Error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A fixed citation window reaches past the census year.
class ImmatureWindowError : public Error {
 public:
  using Error::Error;
};

/// A value required by an operation is undefined (empty group, zero base, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace citind
