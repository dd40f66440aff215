#pragma once

#include <cstddef>
#include <functional>

namespace pcomb {

/// A real number in [0,1]. Construction outside that range (or from NaN) throws DomainError.
class Probability {
 public:
  constexpr Probability() = default;
  explicit Probability(double value);

  constexpr double value() const noexcept { return value_; }
  constexpr operator double() const noexcept { return value_; }

 private:
  double value_ = 0.0;
};

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  std::size_t max_subdivisions = 2048;
};

/// Standard normal cdf. NaN throws DomainError; the infinities map to 0 and 1.
Probability std_normal_cdf(double x);

/// Upper tail 1 - Phi(x), evaluated without cancellation.
Probability std_normal_sf(double x);

/// log Phi(x), finite for every finite x (uses the asymptotic tail expansion below -30).
double log_std_normal_cdf(double x);

/// log(Phi(b) - Phi(a)) for a <= b, accurate when both ends sit in the same tail.
double log_std_normal_interval(double a, double b);

/// Standard normal density.
double std_normal_pdf(double x) noexcept;

/// Inverse of the standard normal cdf. Returns -inf at 0 and +inf at 1.
double std_normal_quantile(Probability u);

/// Chi-square cdf for even degrees of freedom (Erlang closed form).
/// Odd or non-positive dof throws UnsupportedParameter; negative or NaN x throws DomainError.
Probability chi2_cdf(double x, int dof);

/// Chi-square survival function for even dof; pairs with chi2_cdf.
Probability chi2_sf(double x, int dof);

/// cdf of Beta(1, n): 1 - (1 - t)^n.
Probability beta_1_n_cdf(Probability t, int n);

/// Globally adaptive 15-point Gauss-Kronrod quadrature over [lo, hi].
///
/// The rule never evaluates f at the interval ends, so integrable endpoint singularities are
/// tolerated. Terminates once the summed error estimate is below
/// max(abs_tol, rel_tol * |result|); otherwise throws ConvergenceError with the best estimate.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureConfig& cfg = {});

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t subdivisions = 0;
};

/// Same as integrate() but also reports the error estimate and the segment count.
QuadratureResult integrate_with_error(const std::function<double(double)>& f, double lo,
                                      double hi, const QuadratureConfig& cfg = {});

}  // namespace pcomb
