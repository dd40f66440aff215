#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcomb/models.hpp"
#include "pcomb/sim.hpp"

namespace pcomb {

/// Standard deviation of the Normal-Model in every published experiment: 1/sqrt(50).
double default_normal_sigma();

/// A published experimental design: model, signal strength, gamma(s) and the patterns swept.
struct Preset {
  std::string name;
  /// CLI subcommand the preset belongs to: power, gamma-sweep, null-ecdf or ecdf-curve.
  std::string command;
  std::string description;
  ModelSpec model = ModelSpec::beta();
  double r = 1.0;
  /// r as written in the flag expansion, e.g. "1.5sigma".
  std::string r_text;
  std::vector<int> gammas;
  /// Catalog labels (power, gamma-sweep).
  std::vector<std::string> patterns;
  /// Explicit base vectors (null-ecdf bases, ecdf-curve patterns) with their labels.
  std::vector<PatternSpec> bases;
  std::vector<int> conservative_counts;
  std::vector<double> grid;
  std::vector<Method> methods;
  double alpha = 0.05;
};

const std::vector<Preset>& presets();
/// Throws ParameterError listing the known presets.
const Preset& find_preset(const std::string& name);
std::string preset_names();

/// The null-ecdf base vectors: "zeros" = (0,...,0), "spike" = (2,0,...,0), both of length s.
PatternSpec null_base(const std::string& name, std::size_t s = 6);

/// Evenly spaced grid step, 2 step, ..., 1.
std::vector<double> uniform_grid(int points);

}  // namespace pcomb
