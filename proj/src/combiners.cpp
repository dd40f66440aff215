#include "pcomb/combiners.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>
#include <vector>

#include "pcomb/errors.hpp"

namespace pcomb {

namespace {

void validate(std::span<const double> p, const char* who) {
  if (p.empty()) throw ParameterError(std::string(who) + ": need at least one p-value");
  for (double v : p) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw DomainError(std::string(who) + ": p-value outside [0,1]: " + std::to_string(v));
    }
  }
}

double min_of(std::span<const double> p) { return *std::min_element(p.begin(), p.end()); }

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string_view combiner_name(CombinerId id) noexcept {
  switch (id) {
    case CombinerId::Fisher:
      return "fisher";
    case CombinerId::Stouffer:
      return "stouffer";
    case CombinerId::Minimum:
      return "minimum";
    case CombinerId::Bonferroni:
      return "bonferroni";
  }
  return "?";
}

CombinerId parse_combiner(std::string_view name) {
  const std::string key = lower(name);
  for (auto id : {CombinerId::Fisher, CombinerId::Stouffer, CombinerId::Minimum,
                  CombinerId::Bonferroni}) {
    if (key == combiner_name(id)) return id;
  }
  if (key == "min") return CombinerId::Minimum;
  throw ParameterError("unknown combiner '" + std::string(name) + "'");
}

Probability fisher_g(std::span<const double> p) {
  validate(p, "fisher_g");
  double statistic = 0.0;
  for (double v : p) {
    if (v == 0.0) return Probability(0.0);
    statistic -= 2.0 * std::log(v);
  }
  return chi2_sf(statistic, 2 * static_cast<int>(p.size()));
}

Probability stouffer_g(std::span<const double> p) {
  validate(p, "stouffer_g");
  bool has_zero = false;
  bool has_one = false;
  double sum = 0.0;
  for (double v : p) {
    has_zero |= v == 0.0;
    has_one |= v == 1.0;
    // Phi^{-1}(1 - p) = -Phi^{-1}(p), which keeps full precision for small p.
    sum -= std_normal_quantile(Probability(v));
  }
  if (has_zero && has_one) {
    throw IndeterminateStatistic("stouffer_g: p-values 0 and 1 together give inf - inf");
  }
  return std_normal_sf(sum / std::sqrt(static_cast<double>(p.size())));
}

Probability minimum_g(std::span<const double> p) {
  validate(p, "minimum_g");
  return beta_1_n_cdf(Probability(min_of(p)), static_cast<int>(p.size()));
}

Probability bonferroni_g(std::span<const double> p) {
  validate(p, "bonferroni_g");
  return Probability(std::min(1.0, static_cast<double>(p.size()) * min_of(p)));
}

Probability combine(CombinerId id, std::span<const double> p) {
  switch (id) {
    case CombinerId::Fisher:
      return fisher_g(p);
    case CombinerId::Stouffer:
      return stouffer_g(p);
    case CombinerId::Minimum:
      return minimum_g(p);
    case CombinerId::Bonferroni:
      return bonferroni_g(p);
  }
  throw ParameterError("unknown combiner");
}

Probability partial_conjunction_p(std::span<const double> p, int gamma, CombinerId method) {
  if (gamma < 1 || static_cast<std::size_t>(gamma) > p.size()) {
    throw ParameterError("gamma must lie in [1, s]; got gamma = " + std::to_string(gamma) +
                         " with s = " + std::to_string(p.size()));
  }
  validate(p, "partial_conjunction_p");
  std::vector<double> sorted(p.begin(), p.end());
  std::sort(sorted.begin(), sorted.end());
  return combine(method, std::span<const double>(sorted).subspan(static_cast<std::size_t>(gamma - 1)));
}

}  // namespace pcomb
