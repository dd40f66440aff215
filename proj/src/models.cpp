#include "pcomb/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pcomb/errors.hpp"

namespace pcomb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<PatternSpec> build_catalog() {
  std::vector<PatternSpec> catalog = {
      {"1", {0, 0, 0, 0, 1, 5}},
      {"2", {0, 0, 0, 0, 3, 3}},
      {"3", {0, 0, 0, 1, 1, 4}},
      {"4", {0, 0, 0, 2, 2, 2}},
      {"5", {0, 0, 1, 1, 1, 3}},
      {"6", {0, 0, 1.5, 1.5, 1.5, 1.5}},
      {"7", {0, 0.5, 0.5, 0.5, 0.5, 4}},
      {"8", {0, 1, 1, 1, 1, 2}},
      {"9", {0, 1.2, 1.2, 1.2, 1.2, 1.2}},
      {"10", {0.2, 0.2, 0.2, 0.2, 0.2, 5}},
      {"11", {0.5, 0.5, 0.5, 0.5, 2, 2}},
      {"12", {0.5, 0.5, 1.25, 1.25, 1.25, 1.25}},
      {"13", {1, 1, 1, 1, 1, 1}},
  };
  for (std::size_t i = 0; i < 9; ++i) catalog.push_back(catalog[i].conservative_variant());
  return catalog;
}

}  // namespace

ModelSpec ModelSpec::normal(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ParameterError("Normal-Model needs a finite sigma > 0");
  }
  return ModelSpec(ModelKind::Normal, sigma);
}

double ModelSpec::require_sigma() const {
  if (!sigma_) throw ParameterError("Beta-Model has no sigma");
  return *sigma_;
}

std::string ModelSpec::name() const { return kind_ == ModelKind::Beta ? "beta" : "normal"; }

ThetaVector::ThetaVector(std::vector<double> theta) : theta_(std::move(theta)) {
  if (theta_.size() < 2) throw ParameterError("theta needs at least two coordinates");
}

bool PatternSpec::conservative() const noexcept {
  return std::any_of(mu_base.begin(), mu_base.end(), [](double m) { return m < 0.0; });
}

std::size_t PatternSpec::false_nulls() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(mu_base.begin(), mu_base.end(), [](double m) { return m > 0.0; }));
}

double PatternSpec::dispersion() const noexcept {
  double sum = 0.0;
  for (double m : mu_base) sum += m * m;
  return sum;
}

PatternSpec PatternSpec::conservative_variant() const {
  PatternSpec out = *this;
  out.label = label + "c";
  for (double& m : out.mu_base) {
    if (m == 0.0) m = -2.0;
  }
  return out;
}

PatternSpec PatternSpec::with_r(double new_r) const {
  PatternSpec out = *this;
  out.r = new_r;
  return out;
}

const std::vector<PatternSpec>& pattern_catalog() {
  static const std::vector<PatternSpec> catalog = build_catalog();
  return catalog;
}

PatternSpec find_pattern(const std::string& label) {
  for (const auto& p : pattern_catalog()) {
    if (p.label == label) return p;
  }
  throw ParameterError("unknown pattern '" + label + "'");
}

ThetaVector sample_theta(const PatternSpec& pattern, RngStream& rng) {
  if (!(pattern.r > 0.0)) throw ParameterError("signal strength r must be positive");
  std::vector<double> theta(pattern.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double bound = pattern.r * pattern.mu_base[i];
    const double u = rng.uniform();
    theta[i] = bound == 0.0 ? 0.0 : bound * u;
  }
  return ThetaVector(std::move(theta));
}

double beta_model_density(double theta_i, Probability t) {
  if (theta_i <= 0.0) return (1.0 - theta_i) * std::pow(t.value(), -theta_i);
  return (1.0 + theta_i) * std::pow(1.0 - t.value(), theta_i);
}

double beta_model_cdf(double theta_i, Probability t) {
  if (theta_i <= 0.0) return std::pow(t.value(), 1.0 - theta_i);
  return -std::expm1((1.0 + theta_i) * std::log1p(-t.value()));
}

double beta_model_quantile(double theta_i, double u) {
  if (theta_i <= 0.0) return std::pow(u, 1.0 / (1.0 - theta_i));
  return -std::expm1(std::log1p(-u) / (1.0 + theta_i));
}

Probability beta_model_sample(double theta_i, RngStream& rng) {
  return Probability(beta_model_quantile(theta_i, rng.uniform()));
}

double normal_model_density(double theta_i, double sigma, Probability t) {
  if (theta_i == 0.0) return 1.0;
  const double z = -sigma * std_normal_quantile(t);
  if (std::isinf(z)) return (z > 0.0) == (theta_i > 0.0) ? kInf : 0.0;
  return std::exp((2.0 * z * theta_i - theta_i * theta_i) / (2.0 * sigma * sigma));
}

double normal_model_cdf(double theta_i, double sigma, Probability t) {
  if (t.value() == 0.0 || t.value() == 1.0) return t.value();
  return std_normal_cdf(theta_i / sigma + std_normal_quantile(t));
}

double normal_model_quantile(double theta_i, double sigma, double u) {
  return std_normal_cdf(-theta_i / sigma - std_normal_quantile(Probability(u)));
}

Probability normal_model_sample(double theta_i, double sigma, RngStream& rng) {
  return Probability(normal_model_quantile(theta_i, sigma, rng.uniform()));
}

double model_density(const ModelSpec& model, double theta_i, Probability t) {
  if (model.kind() == ModelKind::Beta) return beta_model_density(theta_i, t);
  return normal_model_density(theta_i, model.require_sigma(), t);
}

double model_cdf(const ModelSpec& model, double theta_i, Probability t) {
  if (model.kind() == ModelKind::Beta) return beta_model_cdf(theta_i, t);
  return normal_model_cdf(theta_i, model.require_sigma(), t);
}

double model_quantile(const ModelSpec& model, double theta_i, double u) {
  if (model.kind() == ModelKind::Beta) return beta_model_quantile(theta_i, u);
  return normal_model_quantile(theta_i, model.require_sigma(), u);
}

Probability sample_p(const ModelSpec& model, double theta_i, RngStream& rng) {
  return Probability(model_quantile(model, theta_i, rng.uniform()));
}

void sample_p_values(const ModelSpec& model, const ThetaVector& theta, RngStream& rng,
                     std::span<double> out) {
  if (out.size() != theta.size()) throw ParameterError("output span does not match theta size");
  for (std::size_t i = 0; i < theta.size(); ++i) out[i] = sample_p(model, theta[i], rng);
}

}  // namespace pcomb
