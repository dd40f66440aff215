#include "pcomb/presets.hpp"

#include <cmath>

#include "pcomb/errors.hpp"

namespace pcomb {

namespace {

std::vector<std::string> power_patterns() {
  std::vector<std::string> labels;
  for (const auto& p : pattern_catalog()) labels.push_back(p.label);
  return labels;
}

Preset power_preset(std::string name, std::string description, ModelSpec model, double r,
                    std::string r_text) {
  Preset p;
  p.name = std::move(name);
  p.command = "power";
  p.description = std::move(description);
  p.model = model;
  p.r = r;
  p.r_text = std::move(r_text);
  p.gammas = {2};
  p.patterns = power_patterns();
  p.methods = figure_methods();
  return p;
}

Preset gamma_preset(std::string name, std::string description, ModelSpec model, double r,
                    std::string r_text) {
  Preset p;
  p.name = std::move(name);
  p.command = "gamma-sweep";
  p.description = std::move(description);
  p.model = model;
  p.r = r;
  p.r_text = std::move(r_text);
  p.gammas = {1, 2, 3, 4, 5};
  p.patterns = {"7", "7c"};
  p.methods = figure_methods();
  return p;
}

Preset null_preset(std::string name, std::string description, ModelSpec model, double r,
                   std::string r_text) {
  Preset p;
  p.name = std::move(name);
  p.command = "null-ecdf";
  p.description = std::move(description);
  p.model = model;
  p.r = r;
  p.r_text = std::move(r_text);
  p.gammas = {2};
  p.bases = {null_base("zeros"), null_base("spike")};
  p.conservative_counts = {0, 1, 2, 3, 4, 5};
  p.methods = figure_methods();
  return p;
}

std::vector<Preset> build_presets() {
  const double sigma = default_normal_sigma();
  const ModelSpec normal = ModelSpec::normal(sigma);
  std::vector<Preset> out;
  out.push_back(power_preset("fig1", "relative power, Beta-Model, gamma=2, r=1", ModelSpec::beta(),
                             1.0, "1"));
  out.push_back(power_preset("fig2", "relative power, Beta-Model, gamma=2, r=5", ModelSpec::beta(),
                             5.0, "5"));
  out.push_back(power_preset("fig3", "relative power, Normal-Model sigma=1/sqrt(50), gamma=2, r=0.5 sigma",
                             normal, 0.5 * sigma, "0.5sigma"));
  out.push_back(power_preset("fig4", "relative power, Normal-Model sigma=1/sqrt(50), gamma=2, r=1.5 sigma",
                             normal, 1.5 * sigma, "1.5sigma"));
  out.push_back(gamma_preset("fig5", "gamma sweep 1..5, patterns 7 and 7c, Beta-Model, r=10",
                             ModelSpec::beta(), 10.0, "10"));
  out.push_back(gamma_preset("fig6", "gamma sweep 1..5, patterns 7 and 7c, Normal-Model, r=3 sigma",
                             normal, 3.0 * sigma, "3sigma"));

  Preset curves;
  curves.name = "fig7";
  curves.command = "ecdf-curve";
  curves.description =
      "ecdf curves of Fisher, Stouffer, minimum under (2,-1,0,0,0,0) and (2,-1,-1,-1,-1,0), "
      "Beta-Model, r=5, gamma=2";
  curves.model = ModelSpec::beta();
  curves.r = 5.0;
  curves.r_text = "5";
  curves.gammas = {2};
  curves.bases = {with_conservative_nulls(null_base("spike"), 1),
                  with_conservative_nulls(null_base("spike"), 4)};
  curves.grid = uniform_grid(100);
  curves.methods = {Method::Fisher, Method::Stouffer, Method::Minimum};
  out.push_back(std::move(curves));

  out.push_back(null_preset("null-beta", "ecdf at alpha vs number of -1 nulls, Beta-Model, r=5, gamma=2",
                            ModelSpec::beta(), 5.0, "5"));
  out.push_back(null_preset("null-normal",
                            "ecdf at alpha vs number of -1 nulls, Normal-Model, r=1.5 sigma, gamma=2",
                            normal, 1.5 * sigma, "1.5sigma"));
  return out;
}

}  // namespace

double default_normal_sigma() { return 1.0 / std::sqrt(50.0); }

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build_presets();
  return all;
}

std::string preset_names() {
  std::string names;
  for (const auto& p : presets()) names += (names.empty() ? "" : ", ") + p.name;
  return names;
}

const Preset& find_preset(const std::string& name) {
  for (const auto& p : presets()) {
    if (p.name == name) return p;
  }
  throw ParameterError("unknown preset '" + name + "'; known presets: " + preset_names());
}

PatternSpec null_base(const std::string& name, std::size_t s) {
  if (s < 2) throw ParameterError("null base needs s >= 2");
  PatternSpec p;
  p.mu_base.assign(s, 0.0);
  if (name == "zeros") {
    p.label = "zeros";
  } else if (name == "spike") {
    p.label = "spike";
    p.mu_base[0] = 2.0;
  } else {
    throw ParameterError("unknown null base '" + name + "' (expected zeros or spike)");
  }
  return p;
}

std::vector<double> uniform_grid(int points) {
  if (points < 1) throw ParameterError("grid needs at least one point");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(points));
  for (int i = 1; i <= points; ++i) grid.push_back(static_cast<double>(i) / points);
  return grid;
}

}  // namespace pcomb
