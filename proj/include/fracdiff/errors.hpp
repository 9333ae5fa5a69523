#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fracdiff {

/// Input or configuration value outside the supported domain.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The marching loop produced a non-finite field value (instability overflow).
class SolverError : public std::runtime_error {
 public:
  SolverError(std::int64_t step, const std::string& what)
      : std::runtime_error(what), step_(step) {}

  std::int64_t step() const noexcept { return step_; }

 private:
  std::int64_t step_;
};

/// Rational-fit linear system was singular or missed the residual bound.
class FitFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rational fit solved, but its denominator vanishes inside the constraint range.
class FitRejected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fracdiff
