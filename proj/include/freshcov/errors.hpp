#pragma once

#include <stdexcept>
#include <string>

namespace freshcov {

/// Base class for recoverable errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter is outside the domain where the model is defined
/// (e.g. path-loss exponent <= 2, or 2^{R/W} overflowing).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The requested coverage ratio cannot be met even by perfectly fresh data,
/// or the resulting target AoI is not longer than one slot.
class UnreachableTarget : public Error {
 public:
  using Error::Error;
};

/// The update probability is zero, so the sink never receives data.
class NeverUpdates : public Error {
 public:
  using Error::Error;
};

/// Configuration file problem. `line` is 1-based, 0 when unknown.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& msg, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Caller broke a documented precondition. Not meant to be caught in normal
/// operation.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace freshcov
