#pragma once

#include <stdexcept>
#include <string>

namespace interx {

/// Base of all recoverable errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters or inconsistent campaign configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed input data (counts tables, checkpoints).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a function (e.g. exponent <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

enum class EstimationFailure {
  no_deaths,             // likelihood increases towards exponent 0
  all_dead_immediately,  // likelihood increases towards infinity
  insufficient_data,
  all_trials_dead,
  non_convergence,
};

class EstimationError : public Error {
 public:
  EstimationError(EstimationFailure kind, const std::string& what)
      : Error(what), kind_(kind) {}
  [[nodiscard]] EstimationFailure kind() const noexcept { return kind_; }

 private:
  EstimationFailure kind_;
};

const char* to_string(EstimationFailure kind) noexcept;

}  // namespace interx
