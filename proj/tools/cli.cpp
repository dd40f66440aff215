#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "pcomb/combiners.hpp"
#include "pcomb/errors.hpp"
#include "pcomb/evalues.hpp"
#include "pcomb/models.hpp"
#include "pcomb/presets.hpp"
#include "pcomb/report.hpp"
#include "pcomb/sim.hpp"

namespace pcomb::cli {

namespace {

namespace fs = std::filesystem;

// Bad flag values; reported with exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Output directory or file cannot be written; exit code 3.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep = ',') {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    parts.push_back(item);
  }
  return parts;
}

std::string join(const std::vector<std::string>& parts, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

double parse_double(const std::string& token, const std::string& flag) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used == token.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(flag + ": cannot parse '" + token + "' as a number");
}

std::int64_t parse_int(const std::string& token, const std::string& flag) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(token, &used);
    if (used == token.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(flag + ": cannot parse '" + token + "' as an integer");
}

std::uint64_t parse_count(const std::string& token, const std::string& flag) {
  const auto v = parse_int(token, flag);
  if (v < 0) throw UsageError(flag + ": '" + token + "' must be non-negative");
  return static_cast<std::uint64_t>(v);
}

std::vector<double> parse_probabilities(const std::string& text, const std::string& flag) {
  std::vector<double> values;
  for (const auto& token : split(text)) {
    const double v = parse_double(token, flag);
    if (!(v >= 0.0 && v <= 1.0)) throw UsageError(flag + ": '" + token + "' is not in [0,1]");
    values.push_back(v);
  }
  return values;
}

// "0..5" or "0,2,4".
std::vector<int> parse_int_list(const std::string& text, const std::string& flag) {
  std::vector<int> values;
  for (const auto& token : split(text)) {
    const auto dots = token.find("..");
    if (dots != std::string::npos) {
      const auto lo = parse_int(token.substr(0, dots), flag);
      const auto hi = parse_int(token.substr(dots + 2), flag);
      if (hi < lo) throw UsageError(flag + ": empty range '" + token + "'");
      for (auto v = lo; v <= hi; ++v) values.push_back(static_cast<int>(v));
    } else {
      values.push_back(static_cast<int>(parse_int(token, flag)));
    }
  }
  if (values.empty()) throw UsageError(flag + ": empty list");
  return values;
}

ModelSpec parse_model(const std::string& name, const std::string& sigma_text) {
  const double sigma = sigma_text.empty() ? default_normal_sigma() : parse_double(sigma_text, "--sigma");
  if (name == "beta") return ModelSpec::beta();
  if (name == "normal") {
    if (!(sigma > 0.0)) throw UsageError("--sigma must be positive");
    return ModelSpec::normal(sigma);
  }
  throw UsageError("--model: unknown model '" + name + "' (expected beta or normal)");
}

// "5" or "1.5sigma" (multiples of the Normal-Model sigma).
double parse_r(const std::string& text, const ModelSpec& model) {
  for (const std::string suffix : {"sigma", "s"}) {
    if (text.size() > suffix.size() && text.ends_with(suffix)) {
      if (model.kind() != ModelKind::Normal) throw UsageError("--r: '" + text + "' needs --model normal");
      return parse_double(text.substr(0, text.size() - suffix.size()), "--r") * model.require_sigma();
    }
  }
  const double r = parse_double(text, "--r");
  if (!(r > 0.0)) throw UsageError("--r must be positive");
  return r;
}

std::vector<Method> parse_methods(const std::string& text) {
  if (text == "all") return all_methods();
  std::vector<Method> methods;
  for (const auto& token : split(text)) {
    try {
      methods.push_back(parse_method(token));
    } catch (const ParameterError&) {
      throw UsageError("--methods: unknown method '" + token + "'");
    }
  }
  if (methods.empty()) throw UsageError("--methods: empty list");
  return methods;
}

std::string methods_text(const std::vector<Method>& methods) {
  std::vector<std::string> names;
  for (Method m : methods) names.emplace_back(method_name(m));
  return join(names);
}

std::string numbers_text(const std::vector<double>& values, const char* sep = ",") {
  std::vector<std::string> parts;
  for (double v : values) parts.push_back(format_number(v));
  return join(parts, sep);
}

PatternSpec pattern_from_mu(const std::string& text) {
  PatternSpec p;
  for (const auto& token : split(text)) p.mu_base.push_back(parse_double(token, "--mu"));
  if (p.mu_base.size() < 2) throw UsageError("--mu: need at least two entries");
  p.label = "mu(" + numbers_text(p.mu_base, ";") + ")";
  return p;
}

// Flags shared by the experiment subcommands. Strings so that diagnostics can quote tokens.
struct ExperimentFlags {
  std::string preset;
  std::string model;
  std::string sigma;
  std::string r;
  std::string gamma;
  std::string alpha;
  std::string reps;
  std::string seed = "42";
  std::string methods;
  std::string workers = "1";
  std::string chunk = "1024";
  std::string out;
  std::string format = "both";
  std::string patterns;
  std::string mu;
  std::string base;
  std::string conservative;
  std::string gammas;
  std::string grid;
  bool plot = false;
  bool full = false;
};

void add_experiment_flags(CLI::App& app, ExperimentFlags& f) {
  app.add_option("--preset", f.preset, "Named experiment preset");
  app.add_option("--model", f.model, "beta or normal");
  app.add_option("--sigma", f.sigma, "Normal-Model standard deviation (default 1/sqrt(50))");
  app.add_option("--r", f.r, "Signal strength, e.g. 5 or 1.5sigma");
  app.add_option("--alpha", f.alpha, "Significance level (default 0.05)");
  app.add_option("--reps", f.reps, "Monte Carlo repetitions (default 10000)");
  app.add_option("--seed", f.seed, "64-bit seed (default 42)");
  app.add_option("--methods", f.methods, "Comma list of methods, or all");
  app.add_option("--workers", f.workers, "Worker threads (results do not depend on it)");
  app.add_option("--chunk", f.chunk, "Repetitions per random stream chunk (default 1024)");
  app.add_option("--out", f.out, std::string("Output directory (default $") + kOutputDirEnv + " or .)");
  app.add_option("--format", f.format, "csv, json or both");
  app.add_flag("--plot", f.plot, "Also write an SVG plot");
  app.add_flag("--full", f.full, "Use 100000 repetitions");
}

// Everything an experiment subcommand needs after validation.
struct Plan {
  std::string command;
  std::string stem;
  ModelSpec model = ModelSpec::beta();
  double r = 1.0;
  std::string r_text;
  std::vector<int> gammas;
  std::vector<PatternSpec> patterns;
  std::vector<int> conservative_counts;
  std::vector<double> grid;
  std::vector<Method> methods;
  double alpha = 0.05;
  std::uint64_t reps = 10000;
  std::uint64_t seed = 42;
  unsigned workers = 1;
  std::uint64_t chunk = 1024;
  fs::path out_dir;
  bool csv = true;
  bool json = true;
  bool plot = false;

  ExperimentConfig config(const PatternSpec& pattern, int gamma) const {
    ExperimentConfig cfg;
    cfg.model = model;
    cfg.pattern = pattern.with_r(r);
    cfg.gamma = gamma;
    cfg.methods = methods;
    cfg.alpha = alpha;
    cfg.repetitions = reps;
    cfg.seed = seed;
    cfg.chunk_size = chunk;
    cfg.workers = workers;
    return cfg;
  }

  std::string invocation() const {
    std::vector<std::string> labels;
    std::vector<std::string> mus;
    for (const auto& p : patterns) {
      labels.push_back(p.label);
      mus.push_back(numbers_text(p.mu_base, ";"));
    }
    std::vector<std::string> gamma_parts;
    for (int g : gammas) gamma_parts.push_back(std::to_string(g));
    std::ostringstream s;
    s << command << " --model " << model.name();
    if (model.kind() == ModelKind::Normal) s << " --sigma " << format_number(model.require_sigma());
    s << " --r " << r_text << " (" << format_number(r) << ")"
      << " --gamma " << join(gamma_parts) << " --alpha " << format_number(alpha) << " --reps " << reps
      << " --seed " << seed << " --chunk " << chunk << " --methods " << methods_text(methods)
      << " --patterns " << join(labels) << " --mu " << join(mus, " | ");
    if (!conservative_counts.empty()) {
      std::vector<std::string> parts;
      for (int c : conservative_counts) parts.push_back(std::to_string(c));
      s << " --conservative " << join(parts);
    }
    if (!grid.empty()) s << " --grid " << grid.size() << " points in [" << format_number(grid.front())
                         << ", " << format_number(grid.back()) << "]";
    return s.str();
  }
};

fs::path default_out_dir() {
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return ".";
}

Plan make_plan(const std::string& command, const ExperimentFlags& f) {
  Plan plan;
  plan.command = command;
  plan.stem = command;
  const Preset* preset = nullptr;
  if (!f.preset.empty()) {
    try {
      preset = &find_preset(f.preset);
    } catch (const ParameterError& e) {
      throw UsageError(e.what());
    }
    if (preset->command != command) {
      throw UsageError("preset '" + f.preset + "' belongs to the " + preset->command + " subcommand");
    }
    plan.stem = preset->name;
    plan.model = preset->model;
    plan.r = preset->r;
    plan.r_text = preset->r_text;
    plan.gammas = preset->gammas;
    plan.methods = preset->methods;
    plan.alpha = preset->alpha;
    plan.conservative_counts = preset->conservative_counts;
    plan.grid = preset->grid;
    for (const auto& label : preset->patterns) plan.patterns.push_back(find_pattern(label));
    for (const auto& base : preset->bases) plan.patterns.push_back(base);
  } else {
    if (f.model.empty()) throw UsageError(command + ": --model is required without --preset");
    if (f.r.empty()) throw UsageError(command + ": --r is required without --preset");
    plan.methods = command == "ecdf-curve"
                       ? std::vector<Method>{Method::Fisher, Method::Stouffer, Method::Minimum}
                       : figure_methods();
  }

  if (!f.model.empty() || !f.sigma.empty()) {
    plan.model = parse_model(f.model.empty() ? plan.model.name() : f.model, f.sigma);
  }
  if (!f.r.empty()) {
    plan.r = parse_r(f.r, plan.model);
    plan.r_text = f.r;
  }
  if (!f.methods.empty()) plan.methods = parse_methods(f.methods);
  if (!f.alpha.empty()) {
    plan.alpha = parse_double(f.alpha, "--alpha");
    if (!(plan.alpha >= 0.0 && plan.alpha <= 1.0)) throw UsageError("--alpha must lie in [0,1]");
  }
  if (!f.gamma.empty()) plan.gammas = parse_int_list(f.gamma, "--gamma");
  if (!f.gammas.empty()) plan.gammas = parse_int_list(f.gammas, "--gammas");
  if (plan.gammas.empty()) plan.gammas = command == "gamma-sweep" ? std::vector<int>{1, 2, 3, 4, 5}
                                                                : std::vector<int>{2};
  if (command != "gamma-sweep" && plan.gammas.size() != 1) {
    throw UsageError("--gamma: " + command + " takes a single gamma");
  }

  if (!f.patterns.empty() || !f.mu.empty()) plan.patterns.clear();
  for (const auto& label : split(f.patterns)) {
    try {
      plan.patterns.push_back(find_pattern(label));
    } catch (const ParameterError& e) {
      throw UsageError(std::string("--patterns: ") + e.what());
    }
  }
  for (const auto& mu : split(f.mu, '/')) plan.patterns.push_back(pattern_from_mu(mu));
  if (!f.base.empty()) {
    plan.patterns.clear();
    for (const auto& name : split(f.base)) {
      try {
        plan.patterns.push_back(null_base(name));
      } catch (const ParameterError& e) {
        throw UsageError(std::string("--base: ") + e.what());
      }
    }
  }
  if (plan.patterns.empty()) throw UsageError(command + ": no pattern given");

  if (command == "null-ecdf") {
    if (!f.conservative.empty()) plan.conservative_counts = parse_int_list(f.conservative, "--conservative");
    if (plan.conservative_counts.empty()) plan.conservative_counts = {0};
  }
  if (command == "ecdf-curve") {
    if (!f.grid.empty()) {
      const auto parts = split(f.grid);
      if (parts.size() == 1 && parts[0].find('.') == std::string::npos) {
        const auto n = parse_int(parts[0], "--grid");
        if (n < 1) throw UsageError("--grid: need at least one point");
        plan.grid = uniform_grid(static_cast<int>(n));
      } else {
        plan.grid = parse_probabilities(f.grid, "--grid");
        if (!std::is_sorted(plan.grid.begin(), plan.grid.end())) {
          throw UsageError("--grid: points must be sorted ascending");
        }
      }
    }
    if (plan.grid.empty()) plan.grid = uniform_grid(20);
  }

  plan.reps = f.full ? 100000 : 10000;
  if (!f.reps.empty()) plan.reps = parse_count(f.reps, "--reps");
  if (plan.reps == 0) throw UsageError("--reps must be positive");
  plan.seed = parse_count(f.seed, "--seed");
  plan.workers = static_cast<unsigned>(std::max<std::uint64_t>(1, parse_count(f.workers, "--workers")));
  plan.chunk = parse_count(f.chunk, "--chunk");
  if (plan.chunk == 0) throw UsageError("--chunk must be positive");

  if (f.format == "csv") {
    plan.json = false;
  } else if (f.format == "json") {
    plan.csv = false;
  } else if (f.format != "both") {
    throw UsageError("--format: expected csv, json or both, got '" + f.format + "'");
  }
  plan.plot = f.plot;
  plan.out_dir = f.out.empty() ? default_out_dir() : fs::path(f.out);

  // Every configuration is checked before any simulation starts.
  for (const auto& pattern : plan.patterns) {
    for (int gamma : plan.gammas) {
      try {
        plan.config(pattern, gamma).validate();
        for (int count : plan.conservative_counts) with_conservative_nulls(pattern, count);
      } catch (const ParameterError& e) {
        throw UsageError(pattern.label + ": " + e.what());
      }
    }
  }
  return plan;
}

void prepare_out_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw OutputError("cannot create output directory " + dir.string());
  const fs::path probe = dir / ".pcomb-write-probe";
  {
    std::ofstream f(probe);
    if (!f) throw OutputError("output directory is not writable: " + dir.string());
  }
  fs::remove(probe, ec);
}

void write_file(const fs::path& path, const std::string& content, std::ostream& out) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << content)) throw OutputError("cannot write " + path.string());
  out << path.string() << '\n';
}

void emit(const Plan& plan, const ResultTable& table, const std::optional<LinePlot>& plot,
          std::ostream& out) {
  if (plan.csv) {
    std::ostringstream s;
    write_csv(s, table);
    write_file(plan.out_dir / (plan.stem + ".csv"), s.str(), out);
  }
  if (plan.json) {
    std::ostringstream s;
    write_json(s, table);
    write_file(plan.out_dir / (plan.stem + ".json"), s.str(), out);
  }
  if (plan.plot && plot) {
    std::ostringstream s;
    write_svg(s, *plot);
    write_file(plan.out_dir / (plan.stem + ".svg"), s.str(), out);
  }
}

ResultRow row_for(const Plan& plan, const ExperimentConfig& cfg, const SimResult& r, double extra) {
  return {plan.model.name(), cfg.pattern.label, plan.r, cfg.gamma, r.method, r.estimate,
          r.std_error, r.repetitions, plan.seed, extra};
}

std::string model_title(const Plan& plan) {
  std::string title = plan.model.kind() == ModelKind::Beta ? "Beta-Model" : "Normal-Model";
  return title + ", r = " + plan.r_text;
}

void run_power_command(const Plan& plan, std::ostream& out, std::ostream& err) {
  ResultTable table{TableKind::Power, plan.command, plan.invocation(), {}};
  LinePlot plot;
  plot.title = "Relative power, " + model_title(plan) + ", gamma = " + std::to_string(plan.gammas[0]);
  plot.x_label = "pattern";
  plot.y_label = "relative power";
  for (Method m : plan.methods) plot.series.push_back({std::string(method_name(m)), {}});
  for (std::size_t i = 0; i < plan.patterns.size(); ++i) {
    const auto cfg = plan.config(plan.patterns[i], plan.gammas[0]);
    if (auto warning = alternative_warning(cfg)) err << "warning: " << *warning << '\n';
    const auto results = run_power(cfg);
    const auto relative = relative_power(results);
    if (relative.warning) err << "warning: " << cfg.pattern.label << ": " << *relative.warning << '\n';
    for (std::size_t m = 0; m < results.size(); ++m) {
      table.rows.push_back(row_for(plan, cfg, results[m], relative.values[m].second));
      plot.series[m].y.push_back(relative.values[m].second);
    }
    plot.x.push_back(static_cast<double>(i + 1));
    plot.x_ticks.push_back(cfg.pattern.label);
  }
  emit(plan, table, plot, out);
}

void run_gamma_command(const Plan& plan, std::ostream& out, std::ostream& err) {
  ResultTable table{TableKind::Power, plan.command, plan.invocation(), {}};
  LinePlot plot;
  plot.title = "Relative power over gamma, " + model_title(plan);
  plot.x_label = "gamma";
  plot.y_label = "relative power";
  for (int g : plan.gammas) plot.x.push_back(g);
  for (const auto& pattern : plan.patterns) {
    const auto cfg = plan.config(pattern, plan.gammas[0]);
    const auto rows = gamma_sweep(cfg, plan.gammas);
    std::vector<PlotSeries> series;
    for (Method m : plan.methods) series.push_back({std::string(method_name(m)) + " (" + pattern.label + ")", {}});
    for (const auto& row : rows) {
      ExperimentConfig at = cfg;
      at.gamma = row.gamma;
      if (auto warning = alternative_warning(at)) err << "warning: " << *warning << '\n';
      for (std::size_t m = 0; m < row.results.size(); ++m) {
        table.rows.push_back(row_for(plan, at, row.results[m], row.relative.values[m].second));
        series[m].y.push_back(row.relative.values[m].second);
      }
    }
    for (auto& s : series) plot.series.push_back(std::move(s));
  }
  emit(plan, table, plot, out);
}

void run_null_command(const Plan& plan, std::ostream& out) {
  ResultTable table{TableKind::NullEcdf, plan.command, plan.invocation(), {}};
  LinePlot plot;
  plot.title = "ecdf at alpha relative to the largest, " + model_title(plan);
  plot.x_label = "number of conservative nulls";
  plot.y_label = "relative ecdf(alpha)";
  for (int c : plan.conservative_counts) plot.x.push_back(c);
  for (const auto& pattern : plan.patterns) {
    const auto cfg = plan.config(pattern, plan.gammas[0]);
    std::vector<PlotSeries> series;
    for (Method m : plan.methods) series.push_back({std::string(method_name(m)) + " (" + pattern.label + ")", {}});
    for (int count : plan.conservative_counts) {
      const auto results = run_null_ecdf(cfg, count);
      const auto relative = relative_power(results);
      for (std::size_t m = 0; m < results.size(); ++m) {
        table.rows.push_back(row_for(plan, cfg, results[m], count));
        series[m].y.push_back(relative.values[m].second);
      }
    }
    for (auto& s : series) plot.series.push_back(std::move(s));
  }
  emit(plan, table, plot, out);
}

void run_curve_command(const Plan& plan, std::ostream& out) {
  ResultTable table{TableKind::EcdfCurve, plan.command, plan.invocation(), {}};
  LinePlot plot;
  plot.title = "ecdf of combined p-values, " + model_title(plan);
  plot.x_label = "t";
  plot.y_label = "ecdf(t)";
  plot.x = plan.grid;
  plot.x_ticks.resize(plan.grid.size());
  for (std::size_t j = 0; j < plan.grid.size(); j += std::max<std::size_t>(1, plan.grid.size() / 10)) {
    plot.x_ticks[j] = format_number(plan.grid[j]);
  }
  plot.series.push_back({"identity", plan.grid});
  for (const auto& pattern : plan.patterns) {
    const auto cfg = plan.config(pattern, plan.gammas[0]);
    for (const auto& curve : run_ecdf_curve(cfg, plan.grid)) {
      for (std::size_t j = 0; j < plan.grid.size(); ++j) {
        const SimResult r{curve.method, curve.values[j], curve.std_errors[j], cfg.repetitions};
        table.rows.push_back(row_for(plan, cfg, r, plan.grid[j]));
      }
      plot.series.push_back({std::string(method_name(curve.method)) + " (" + pattern.label + ")", curve.values});
    }
  }
  emit(plan, table, plot, out);
}

void run_experiment(const std::string& command, const ExperimentFlags& flags, std::ostream& out,
                    std::ostream& err) {
  const Plan plan = make_plan(command, flags);
  prepare_out_dir(plan.out_dir);
  out << "# " << plan.invocation() << '\n';
  if (command == "power") {
    run_power_command(plan, out, err);
  } else if (command == "gamma-sweep") {
    run_gamma_command(plan, out, err);
  } else if (command == "null-ecdf") {
    run_null_command(plan, out);
  } else {
    run_curve_command(plan, out);
  }
}

void print_patterns(std::ostream& out) {
  out << "label,mu1,mu2,mu3,mu4,mu5,mu6,dispersion\n";
  for (const auto& p : pattern_catalog()) {
    out << p.label;
    for (double m : p.mu_base) out << ',' << format_number(m);
    out << ',' << format_number(p.dispersion()) << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partial conjunction p-value and e-value combination, with power and null simulations"};
  app.require_subcommand(1);

  std::string p_text;
  std::string e_text;
  std::string combine_gamma;
  std::string method = "fisher";
  std::string rule = "product";
  auto* combine = app.add_subcommand("combine", "Combined p-value for H_s^gamma from p-values");
  combine->add_option("--p", p_text, "Comma list of p-values")->required();
  combine->add_option("--gamma", combine_gamma, "gamma in [1, s]")->required();
  combine->add_option("--method", method, "fisher, stouffer, minimum or bonferroni");

  auto* combine_e = app.add_subcommand("combine-e", "Merged e-value and its p-value for H_s^gamma");
  combine_e->add_option("--e", e_text, "Comma list of e-values")->required();
  combine_e->add_option("--gamma", combine_gamma, "gamma in [1, s]")->required();
  combine_e->add_option("--rule", rule, "product, mean or harmonic");

  std::map<std::string, ExperimentFlags> flags;
  auto* power = app.add_subcommand("power", "Power at alpha per pattern and method");
  add_experiment_flags(*power, flags["power"]);
  power->add_option("--gamma", flags["power"].gamma, "gamma (default 2)");
  power->add_option("--patterns", flags["power"].patterns, "Comma list of catalog labels");
  power->add_option("--mu", flags["power"].mu, "Custom base means, e.g. 0,0,0,0,1,5 (separate several with /)");

  auto* sweep = app.add_subcommand("gamma-sweep", "Relative power over a range of gamma");
  add_experiment_flags(*sweep, flags["gamma-sweep"]);
  sweep->add_option("--gammas", flags["gamma-sweep"].gammas, "e.g. 1..5");
  sweep->add_option("--patterns", flags["gamma-sweep"].patterns, "Comma list of catalog labels");
  sweep->add_option("--mu", flags["gamma-sweep"].mu, "Custom base means (separate several with /)");

  auto* null_ecdf = app.add_subcommand("null-ecdf", "ecdf at alpha under true H_s^gamma nulls");
  add_experiment_flags(*null_ecdf, flags["null-ecdf"]);
  null_ecdf->add_option("--gamma", flags["null-ecdf"].gamma, "gamma (default 2)");
  null_ecdf->add_option("--base", flags["null-ecdf"].base, "zeros and/or spike");
  null_ecdf->add_option("--mu", flags["null-ecdf"].mu, "Custom base means (separate several with /)");
  null_ecdf->add_option("--conservative", flags["null-ecdf"].conservative, "Counts of zeros set to -1, e.g. 0..5");

  auto* curve = app.add_subcommand("ecdf-curve", "ecdf of combined p-values on a grid");
  add_experiment_flags(*curve, flags["ecdf-curve"]);
  curve->add_option("--gamma", flags["ecdf-curve"].gamma, "gamma (default 2)");
  curve->add_option("--mu", flags["ecdf-curve"].mu, "Base means (separate several with /)");
  curve->add_option("--patterns", flags["ecdf-curve"].patterns, "Comma list of catalog labels");
  curve->add_option("--grid", flags["ecdf-curve"].grid, "Number of evenly spaced points, or a sorted list");

  auto* patterns = app.add_subcommand("patterns", "Print the evidence pattern catalog as CSV");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*combine) {
      const auto p = parse_probabilities(p_text, "--p");
      const auto gamma = parse_int(combine_gamma, "--gamma");
      CombinerId id;
      try {
        id = parse_combiner(method);
      } catch (const ParameterError&) {
        throw UsageError("--method: unknown method '" + method + "'");
      }
      if (p.size() < 2) throw UsageError("--p: need at least two p-values, got " + std::to_string(p.size()));
      if (gamma < 1 || gamma > static_cast<std::int64_t>(p.size())) {
        throw UsageError("--gamma: " + combine_gamma + " is outside [1, " + std::to_string(p.size()) + "]");
      }
      out << format_number(partial_conjunction_p(p, static_cast<int>(gamma), id)) << '\n';
    } else if (*combine_e) {
      std::vector<double> e;
      for (const auto& token : split(e_text)) {
        const double v = token == "inf" ? std::numeric_limits<double>::infinity() : parse_double(token, "--e");
        if (!(v >= 0.0)) throw UsageError("--e: '" + token + "' is not a non-negative e-value");
        e.push_back(v);
      }
      const auto gamma = parse_int(combine_gamma, "--gamma");
      MergeRule merge;
      try {
        merge = parse_merge_rule(rule);
      } catch (const ParameterError&) {
        throw UsageError("--rule: unknown rule '" + rule + "'");
      }
      if (e.size() < 2) throw UsageError("--e: need at least two e-values");
      if (gamma < 1 || gamma > static_cast<std::int64_t>(e.size())) {
        throw UsageError("--gamma: " + combine_gamma + " is outside [1, " + std::to_string(e.size()) + "]");
      }
      if (merge == MergeRule::HarmMean) {
        err << "warning: the harmonic mean of e-values is not a valid e-value in general\n";
      }
      const EValue merged = partial_conjunction_e(e, static_cast<int>(gamma), merge);
      out << "e = " << format_number(merged) << "\np = " << format_number(e_to_p(merged)) << '\n';
    } else if (*patterns) {
      print_patterns(out);
    } else {
      for (auto* sub : {power, sweep, null_ecdf, curve}) {
        if (*sub) run_experiment(sub->get_name(), flags[sub->get_name()], out, err);
      }
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    // ParameterError, UnsupportedParameter
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    // DomainError, IndeterminateStatistic
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const OutputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitOutput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace pcomb::cli
