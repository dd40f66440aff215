#include "pcomb/evalues.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "pcomb/errors.hpp"

namespace pcomb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogSqrt2Pi = 0.918938533204672741780;

// Half-width, in standard-normal units, of the window outside which the integrands of
// expected_bayes_factor are below double precision.
constexpr double kTailWindow = 16.0;

// integral_0^width (1 + t) e^{slope t} dt for slope <= 0 (slope = -inf gives 0).
double linear_exp_integral(double width, double slope) {
  if (slope == -kInf) return 0.0;
  const double x = slope * width;
  if (std::abs(x) < 0.5) {
    // x e^x - expm1(x) = sum_{n >= 2} (n - 1) x^n / n!
    double flat = 1.0;
    double term = 1.0;
    for (int n = 2; n < 40; ++n) {
      term *= x / n;
      flat += term;
      if (std::abs(term) < 1e-18) break;
    }
    double ramp = 0.0;
    term = 0.5;
    for (int n = 2; n < 40; ++n) {
      ramp += (n - 1) * term;
      term *= x / (n + 1);
      if (std::abs(term) < 1e-18) break;
    }
    return width * flat + width * width * ramp;
  }
  const double flat = std::expm1(x) / slope;
  const double ramp = (x * std::exp(x) - std::expm1(x)) / (slope * slope);
  return flat + ramp;
}

// log BF in the Beta-Model from log p and log(1 - p).
double log_bf_beta(const BayesFactorSpec& spec, double log_p, double log_q) {
  const double alt = spec.alt_upper();
  const double log_num = std::log(linear_exp_integral(alt, log_q) / alt);
  if (spec.null_kind() == NullKind::Simple) return log_num;
  const double width = -spec.null_lower();
  const double log_den = std::log(linear_exp_integral(width, log_p) / width);
  if (log_num == -kInf) return -kInf;
  return log_num - log_den;
}

// log BF in the Normal-Model from w = Phi^{-1}(1 - p), the standardized test statistic.
double log_bf_normal(const BayesFactorSpec& spec, double w) {
  if (w == kInf) return kInf;
  if (w == -kInf) return -kInf;
  const double sigma = spec.model().require_sigma();
  const double alt = spec.alt_upper();
  // (1/alt) int_0^alt exp(theta w / sigma - theta^2 / (2 sigma^2)) dtheta
  //   = (sigma sqrt(2 pi) / alt) e^{w^2/2} [Phi(alt/sigma - w) - Phi(-w)]
  const double log_num_core = log_std_normal_interval(-w, alt / sigma - w);
  if (spec.null_kind() == NullKind::Simple) {
    return std::log(sigma / alt) + kLogSqrt2Pi + 0.5 * w * w + log_num_core;
  }
  const double width = -spec.null_lower();
  const double log_den_core = log_std_normal_interval(-width / sigma - w, -w);
  return std::log(width / alt) + log_num_core - log_den_core;
}

double log_bf_from_p(const BayesFactorSpec& spec, double p) {
  if (spec.model().kind() == ModelKind::Beta) {
    return log_bf_beta(spec, std::log(p), std::log1p(-p));
  }
  return log_bf_normal(spec, -std_normal_quantile(Probability(p)));
}

// Both p and 1 - p recovered from w without cancellation.
double log_bf_from_w(const BayesFactorSpec& spec, double w) {
  if (spec.model().kind() == ModelKind::Beta) {
    return log_bf_beta(spec, log_std_normal_cdf(-w), log_std_normal_cdf(w));
  }
  return log_bf_normal(spec, w);
}

// log f_theta(p) at p = 1 - Phi(w).
double log_density_from_w(const ModelSpec& model, double theta, double w) {
  if (model.kind() == ModelKind::Beta) {
    if (theta <= 0.0) return std::log1p(-theta) - theta * log_std_normal_cdf(-w);
    return std::log1p(theta) + theta * log_std_normal_cdf(w);
  }
  const double sigma = model.require_sigma();
  return theta * w / sigma - theta * theta / (2.0 * sigma * sigma);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

void validate_e(std::span<const double> e) {
  if (e.empty()) throw ParameterError("e_merge: need at least one e-value");
  for (double v : e) {
    if (!(v >= 0.0)) throw DomainError("e-value must be non-negative: " + std::to_string(v));
  }
}

}  // namespace

EValue::EValue(double value) : value_(value) {
  if (!(value >= 0.0)) throw DomainError("e-value must be non-negative: " + std::to_string(value));
}

BayesFactorSpec BayesFactorSpec::make(const ModelSpec& model, double r, NullKind null_kind,
                                      PriorSupport prior, QuadratureConfig quadrature) {
  if (!(r > 0.0) || !std::isfinite(r)) throw ParameterError("Bayes factor needs r > 0");
  if (!(prior.alt_multiple > 0.0) || !(prior.null_multiple > 0.0)) {
    throw ParameterError("prior support multiples must be positive");
  }
  BayesFactorSpec spec(model, r, null_kind, prior, quadrature);
  spec.null_expectation_ = compute_null_expectation(spec);
  return spec;
}

double BayesFactorSpec::null_lower() const noexcept {
  return null_kind_ == NullKind::Simple ? 0.0 : -prior_.null_multiple * r_;
}

EValue bayes_factor(const BayesFactorSpec& spec, Probability p) {
  return EValue(std::exp(log_bf_from_p(spec, p.value())));
}

EValue bayes_factor_by_quadrature(const BayesFactorSpec& spec, Probability p) {
  const ModelSpec& model = spec.model();
  auto density = [&](double theta) { return model_density(model, theta, p); };
  const double alt = spec.alt_upper();
  const double num = integrate(density, 0.0, alt, spec.quadrature()) / alt;
  if (spec.null_kind() == NullKind::Simple) return EValue(num);
  const double width = -spec.null_lower();
  const double den = integrate(density, -width, 0.0, spec.quadrature()) / width;
  if (den == 0.0) return EValue(num == 0.0 ? 0.0 : kInf);
  return EValue(num / den);
}

double expected_bayes_factor(const BayesFactorSpec& spec, double theta) {
  // E_theta[BF] = int_0^1 BF(p) f_theta(p) dp, with p = 1 - Phi(w) so dp = phi(w) dw.
  const ModelSpec& model = spec.model();
  double lo = -kTailWindow;
  double hi = kTailWindow;
  if (model.kind() == ModelKind::Normal) {
    const double sigma = model.require_sigma();
    lo = theta / sigma - kTailWindow;
    hi = theta / sigma + spec.alt_upper() / sigma + kTailWindow;
  }
  auto integrand = [&](double w) {
    return std::exp(log_bf_from_w(spec, w) + log_density_from_w(model, theta, w) - 0.5 * w * w -
                    kLogSqrt2Pi);
  };
  return integrate(integrand, lo, hi, spec.quadrature());
}

double null_expectation(const BayesFactorSpec& spec) noexcept { return spec.null_expectation(); }

double compute_null_expectation(const BayesFactorSpec& spec) {
  if (spec.null_kind() == NullKind::Simple) return 1.0;
  return expected_bayes_factor(spec, 0.0);
}

EValue adjusted_e(const BayesFactorSpec& spec, Probability p) {
  return EValue(bayes_factor(spec, p).value() / spec.null_expectation());
}

std::string_view merge_rule_name(MergeRule rule) noexcept {
  switch (rule) {
    case MergeRule::Product:
      return "product";
    case MergeRule::ArithMean:
      return "mean";
    case MergeRule::HarmMean:
      return "harmonic";
  }
  return "?";
}

MergeRule parse_merge_rule(std::string_view name) {
  const std::string key = lower(name);
  if (key == "product" || key == "prod") return MergeRule::Product;
  if (key == "mean" || key == "arithmetic" || key == "arithmean") return MergeRule::ArithMean;
  if (key == "harmonic" || key == "harmmean") return MergeRule::HarmMean;
  throw ParameterError("unknown e-value merge rule '" + std::string(name) + "'");
}

EValue e_merge(std::span<const double> e, MergeRule rule) {
  validate_e(e);
  const auto k = static_cast<double>(e.size());
  switch (rule) {
    case MergeRule::Product: {
      double product = 1.0;
      for (double v : e) {
        if (v == 0.0) return EValue(0.0);
        product *= v;
      }
      return EValue(product);
    }
    case MergeRule::ArithMean: {
      double sum = 0.0;
      for (double v : e) sum += v;
      return EValue(sum / k);
    }
    case MergeRule::HarmMean: {
      double inverse_sum = 0.0;
      for (double v : e) {
        if (v == 0.0) return EValue(0.0);
        inverse_sum += 1.0 / v;
      }
      return EValue(inverse_sum == 0.0 ? kInf : k / inverse_sum);
    }
  }
  throw ParameterError("unknown merge rule");
}

EValue partial_conjunction_e(std::span<const double> e, int gamma, MergeRule rule) {
  if (gamma < 1 || static_cast<std::size_t>(gamma) > e.size()) {
    throw ParameterError("gamma must lie in [1, s]; got gamma = " + std::to_string(gamma) +
                         " with s = " + std::to_string(e.size()));
  }
  validate_e(e);
  std::vector<double> sorted(e.begin(), e.end());
  std::sort(sorted.begin(), sorted.end());
  return e_merge(std::span<const double>(sorted).first(e.size() - static_cast<std::size_t>(gamma) + 1),
                 rule);
}

Probability e_to_p(EValue e) {
  if (e.value() == 0.0) return Probability(1.0);
  if (std::isinf(e.value())) return Probability(0.0);
  return Probability(std::min(1.0, 1.0 / e.value()));
}

}  // namespace pcomb
