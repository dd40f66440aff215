#pragma once

#include <stdexcept>
#include <string>

namespace pcomb {

/// Input outside the mathematical domain of an operation (NaN, p-value outside [0,1], ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Caller-supplied parameter out of range (gamma > s, bad repetition count, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameter that is mathematically valid but not implemented (odd chi-square dof).
class UnsupportedParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Test statistic has no defined value, e.g. Stouffer with both p = 0 and p = 1.
class IndeterminateStatistic : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Adaptive quadrature ran out of subdivisions. Carries the best estimate so far.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double estimate, double error_bound)
      : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

}  // namespace pcomb
