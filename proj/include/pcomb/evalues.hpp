#pragma once

#include <span>
#include <string>
#include <string_view>

#include "pcomb/models.hpp"
#include "pcomb/numerics.hpp"

namespace pcomb {

/// Non-negative extended real (may be +inf). NaN or negative values throw DomainError.
class EValue {
 public:
  constexpr EValue() = default;
  explicit EValue(double value);

  constexpr double value() const noexcept { return value_; }
  constexpr operator double() const noexcept { return value_; }

 private:
  double value_ = 1.0;
};

enum class NullKind { Simple, Composite };

/// Uniform prior supports as multiples of r: the alternative prior is U(0, alt_multiple * r],
/// the composite null prior is U[-null_multiple * r, 0].
struct PriorSupport {
  double alt_multiple = 5.0;
  double null_multiple = 3.0;
};

/// Marginal Bayes factor of one p-value, with the cached null-expectation adjustment.
///
/// Immutable once made; the constant E_0[BF] is computed by quadrature during make() for
/// composite nulls and is exactly 1 for simple ones.
class BayesFactorSpec {
 public:
  static BayesFactorSpec make(const ModelSpec& model, double r, NullKind null_kind,
                              PriorSupport prior = {}, QuadratureConfig quadrature = {});

  const ModelSpec& model() const noexcept { return model_; }
  double r() const noexcept { return r_; }
  NullKind null_kind() const noexcept { return null_kind_; }
  const PriorSupport& prior() const noexcept { return prior_; }
  const QuadratureConfig& quadrature() const noexcept { return quadrature_; }
  /// Right end of the alternative support (0, alt_upper].
  double alt_upper() const noexcept { return prior_.alt_multiple * r_; }
  /// Left end of the composite null support [null_lower, 0]; 0 for simple nulls.
  double null_lower() const noexcept;
  double null_expectation() const noexcept { return null_expectation_; }

 private:
  BayesFactorSpec(const ModelSpec& model, double r, NullKind kind, PriorSupport prior,
                  QuadratureConfig quadrature)
      : model_(model), r_(r), null_kind_(kind), prior_(prior), quadrature_(quadrature) {}

  ModelSpec model_;
  double r_;
  NullKind null_kind_;
  PriorSupport prior_;
  QuadratureConfig quadrature_;
  double null_expectation_ = 1.0;
};

/// Unadjusted Bayes factor: prior-averaged alternative density over prior-averaged null density.
/// Closed forms for both models.
EValue bayes_factor(const BayesFactorSpec& spec, Probability p);

/// The same quantity by direct quadrature over theta; independent of the closed forms.
EValue bayes_factor_by_quadrature(const BayesFactorSpec& spec, Probability p);

/// Expected unadjusted Bayes factor when the p-value is drawn under theta, by quadrature.
double expected_bayes_factor(const BayesFactorSpec& spec, double theta);

/// The cached E_0[BF]; exactly 1 for simple nulls.
double null_expectation(const BayesFactorSpec& spec) noexcept;

/// Recomputes E_0[BF] by quadrature (returns 1 without quadrature for simple nulls).
double compute_null_expectation(const BayesFactorSpec& spec);

/// BF / E_0[BF], an e-value for the marginal null.
EValue adjusted_e(const BayesFactorSpec& spec, Probability p);

enum class MergeRule { Product, ArithMean, HarmMean };

std::string_view merge_rule_name(MergeRule rule) noexcept;
MergeRule parse_merge_rule(std::string_view name);

/// Merges k >= 1 e-values. A product containing a zero is 0 even if some entry is +inf.
/// HarmMean is a diagnostic only: the harmonic mean of e-values is not an e-value in general.
EValue e_merge(std::span<const double> e, MergeRule rule);

/// Merge of the s - gamma + 1 smallest e-values, an e-value for H_s^gamma.
EValue partial_conjunction_e(std::span<const double> e, int gamma, MergeRule rule);

/// Markov calibration min(1, 1/e), with 1/0 = inf and 1/inf = 0.
Probability e_to_p(EValue e);

}  // namespace pcomb
