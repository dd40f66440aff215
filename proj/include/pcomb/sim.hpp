#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pcomb/combiners.hpp"
#include "pcomb/evalues.hpp"
#include "pcomb/models.hpp"

namespace pcomb {

/// A combined-p-value pipeline: one of the four p-value combiners, or an e-value merge rule
/// followed by the calibration e -> min(1, 1/e).
enum class Method { Fisher, Stouffer, Minimum, Bonferroni, EProduct, EMean, EHarmonic };

std::string_view method_name(Method m) noexcept;
Method parse_method(std::string_view name);
bool is_e_method(Method m) noexcept;

/// The methods shown in the power figures: Stouffer, Fisher, Minimum and the e-product.
std::vector<Method> figure_methods();
std::vector<Method> all_methods();

struct ExperimentConfig {
  ModelSpec model = ModelSpec::beta();
  PatternSpec pattern;
  int gamma = 2;
  std::vector<Method> methods = figure_methods();
  double alpha = 0.05;
  std::uint64_t repetitions = 10000;
  std::uint64_t seed = 0;
  std::uint64_t chunk_size = 1024;
  unsigned workers = 1;
  /// Prior regime of the e-value pipelines. Unset: composite iff the pattern is conservative.
  std::optional<NullKind> null_kind;
  PriorSupport prior;

  /// Throws ParameterError unless 1 <= gamma <= s, methods is nonempty, alpha in [0,1],
  /// repetitions > 0 and chunk_size > 0.
  void validate() const;
  NullKind effective_null_kind() const;
};

/// Estimate of P(combined p <= t) with its binomial standard error.
struct SimResult {
  Method method;
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t repetitions = 0;
};

SimResult make_result(Method method, std::uint64_t hits, std::uint64_t repetitions);

/// Rejection rate at alpha per method. Deterministic in (seed, repetitions, chunk_size);
/// the worker count does not change the result.
std::vector<SimResult> run_power(const ExperimentConfig& cfg);

/// Non-empty when the pattern has fewer than gamma positive entries, i.e. H_s^gamma is true
/// and run_power measures a false rejection rate instead of power.
std::optional<std::string> alternative_warning(const ExperimentConfig& cfg);

struct RelativePower {
  std::vector<std::pair<Method, double>> values;
  std::optional<std::string> warning;
};

/// Each estimate divided by the largest one. All-zero estimates map to 0 with a warning.
RelativePower relative_power(const std::vector<SimResult>& results);

/// cfg.pattern with its first `conservative_count` zero entries (ascending index) set to -1.
PatternSpec with_conservative_nulls(const PatternSpec& base, int conservative_count);

/// Ecdf at alpha of each method's combined p-value after the -1 replacements above.
std::vector<SimResult> run_null_ecdf(const ExperimentConfig& cfg, int conservative_count);

struct EcdfCurve {
  Method method;
  std::vector<double> values;
  std::vector<double> std_errors;
};

/// Ecdf of each method's combined p-value on a sorted grid in [0,1], from one pass.
std::vector<EcdfCurve> run_ecdf_curve(const ExperimentConfig& cfg, const std::vector<double>& grid);

struct GammaSweepRow {
  int gamma;
  std::vector<SimResult> results;
  RelativePower relative;
};

/// run_power for each gamma with the same seed (common random numbers across gammas).
std::vector<GammaSweepRow> gamma_sweep(const ExperimentConfig& cfg, const std::vector<int>& gammas);

}  // namespace pcomb
