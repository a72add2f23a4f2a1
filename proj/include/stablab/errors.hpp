#pragma once

#include <stdexcept>
#include <string>

namespace stablab {

/// A parameter or argument lies outside the domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A quadrature or root-finding routine did not reach its tolerance.
class NumericFailure : public std::runtime_error {
 public:
  NumericFailure(const std::string& what, double error_estimate)
      : std::runtime_error(what), error_estimate_(error_estimate) {}

  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double error_estimate_;
};

/// The tail of a kappa_r integral keeps growing at the integration cap.
class DivergenceError : public NumericFailure {
 public:
  DivergenceError(const std::string& what, double increment_ratio, double reached)
      : NumericFailure(what, increment_ratio), increment_ratio_(increment_ratio), reached_(reached) {}

  /// Ratio of the last two geometric-checkpoint increments (>= 1 means growing).
  double increment_ratio() const noexcept { return increment_ratio_; }
  /// Abscissa at which integration stopped.
  double reached() const noexcept { return reached_; }

 private:
  double increment_ratio_;
  double reached_;
};

/// A Monte Carlo job exceeds its configured draw budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stablab
