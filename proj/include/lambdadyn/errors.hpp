#pragma once

#include <stdexcept>
#include <cstddef>
#include <string>
#include <utility>

namespace lambdadyn {

/// Mismatched or invalid matrix/vector shapes.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numeric argument outside its allowed domain (dt <= 0, bad index, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Inputs that violate a documented precondition, e.g. a closed-form
/// result requested away from two-photon resonance.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An iterative method exhausted its budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Steady-state detection did not settle within the configured horizon.
class HorizonError : public std::runtime_error {
 public:
  HorizonError(const std::string& what, double last_delta)
      : std::runtime_error(what), last_delta_(last_delta) {}
  double last_delta() const noexcept { return last_delta_; }

 private:
  double last_delta_;
};

/// Physical configuration that cannot be simulated (e.g. no commensurate period).
class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration text or flags. line() is 1-based within the
/// configuration file, 0 for command-line flags and whole-config errors.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::string key, std::size_t line)
      : std::runtime_error(what), key_(std::move(key)), line_(line) {}
  const std::string& key() const noexcept { return key_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string key_;
  std::size_t line_;
};

}  // namespace lambdadyn
