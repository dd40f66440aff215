#pragma once

#include <span>
#include <string>
#include <string_view>

#include "pcomb/numerics.hpp"

namespace pcomb {

/// Base combiners g: [0,1]^k -> [0,1] for the global null of k hypotheses.
enum class CombinerId { Fisher, Stouffer, Minimum, Bonferroni };

std::string_view combiner_name(CombinerId id) noexcept;
/// Accepts the names printed by combiner_name(), case-insensitively.
CombinerId parse_combiner(std::string_view name);

// All combiners require k >= 1 and every entry in [0,1]; otherwise ParameterError / DomainError.

/// 1 - F_chi2(2k)(-2 sum log p). Any p = 0 gives 0.
Probability fisher_g(std::span<const double> p);

/// 1 - Phi(k^{-1/2} sum Phi^{-1}(1 - p)). Throws IndeterminateStatistic if both 0 and 1 occur.
Probability stouffer_g(std::span<const double> p);

/// F_Beta(1,k)(min p).
Probability minimum_g(std::span<const double> p);

/// min(1, k * min p).
Probability bonferroni_g(std::span<const double> p);

Probability combine(CombinerId id, std::span<const double> p);

/// Partial conjunction p-value for H_s^gamma: the base combiner applied to the s - gamma + 1
/// largest p-values p_(gamma), ..., p_(s).
Probability partial_conjunction_p(std::span<const double> p, int gamma, CombinerId method);

}  // namespace pcomb
