#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcomb/numerics.hpp"
#include "pcomb/rng.hpp"

namespace pcomb {

enum class ModelKind { Beta, Normal };

/// Which marginal p-value model generates the data.
///
/// Beta-Model: p ~ Beta(1 - theta, 1) for theta <= 0 and Beta(1, 1 + theta) for theta > 0.
/// Normal-Model: p = 1 - Phi(T / sigma) with T ~ N(theta, sigma^2).
/// In both, theta = 0 gives Uniform[0,1] p-values and p is stochastically decreasing in theta.
class ModelSpec {
 public:
  static ModelSpec beta() { return ModelSpec(ModelKind::Beta, std::nullopt); }
  static ModelSpec normal(double sigma);

  ModelKind kind() const noexcept { return kind_; }
  /// Present iff kind() == Normal.
  std::optional<double> sigma() const noexcept { return sigma_; }
  /// sigma() for the Normal-Model; throws ParameterError for the Beta-Model.
  double require_sigma() const;

  std::string name() const;

  bool operator==(const ModelSpec&) const = default;

 private:
  ModelSpec(ModelKind kind, std::optional<double> sigma) : kind_(kind), sigma_(sigma) {}

  ModelKind kind_;
  std::optional<double> sigma_;
};

/// Parameter vector theta = (theta_1, ..., theta_s), s >= 2.
class ThetaVector {
 public:
  explicit ThetaVector(std::vector<double> theta);

  std::size_t size() const noexcept { return theta_.size(); }
  double operator[](std::size_t i) const { return theta_[i]; }
  std::span<const double> values() const noexcept { return theta_; }

 private:
  std::vector<double> theta_;
};

/// Evidence pattern: base means mu_b and signal strength r, so that theta_b = r * mu_b.
struct PatternSpec {
  std::string label;
  std::vector<double> mu_base;
  double r = 1.0;

  std::size_t size() const noexcept { return mu_base.size(); }
  /// Some entry is negative, i.e. some marginal null is composite.
  bool conservative() const noexcept;
  /// Number of strictly positive entries (false marginal nulls).
  std::size_t false_nulls() const noexcept;
  /// sum of mu_b^2 as listed in the catalog.
  double dispersion() const noexcept;
  /// The same pattern with every zero entry replaced by -2.
  PatternSpec conservative_variant() const;
  PatternSpec with_r(double new_r) const;
};

/// Patterns 1-13 followed by the conservative variants 1c-9c.
const std::vector<PatternSpec>& pattern_catalog();

/// Look up a catalog entry by label ("1", "4c", ...). Throws ParameterError if absent.
PatternSpec find_pattern(const std::string& label);

/// Independently per coordinate: theta_i ~ U[r mu_i, 0] if r mu_i < 0, U(0, r mu_i] if
/// r mu_i > 0, and exactly 0 otherwise. Consumes one uniform per coordinate in index order,
/// including degenerate coordinates.
ThetaVector sample_theta(const PatternSpec& pattern, RngStream& rng);

double beta_model_density(double theta_i, Probability t);
double beta_model_cdf(double theta_i, Probability t);
/// Inverse cdf applied to u in (0,1).
double beta_model_quantile(double theta_i, double u);
Probability beta_model_sample(double theta_i, RngStream& rng);

/// Density of the Normal-Model p-value; the limits at t = 0 and t = 1 are returned as 0 or +inf.
double normal_model_density(double theta_i, double sigma, Probability t);
double normal_model_cdf(double theta_i, double sigma, Probability t);
double normal_model_quantile(double theta_i, double sigma, double u);
Probability normal_model_sample(double theta_i, double sigma, RngStream& rng);

double model_density(const ModelSpec& model, double theta_i, Probability t);
double model_cdf(const ModelSpec& model, double theta_i, Probability t);
double model_quantile(const ModelSpec& model, double theta_i, double u);
Probability sample_p(const ModelSpec& model, double theta_i, RngStream& rng);

/// Fills out[i] with a p-value drawn under theta[i], in index order.
void sample_p_values(const ModelSpec& model, const ThetaVector& theta, RngStream& rng,
                     std::span<double> out);

}  // namespace pcomb
