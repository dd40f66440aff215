#include "pcomb/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "pcomb/errors.hpp"

namespace pcomb {

namespace {

constexpr Method kAllMethods[] = {Method::Fisher,   Method::Stouffer, Method::Minimum,
                                  Method::Bonferroni, Method::EProduct, Method::EMean,
                                  Method::EHarmonic};

CombinerId combiner_of(Method m) {
  switch (m) {
    case Method::Fisher:
      return CombinerId::Fisher;
    case Method::Stouffer:
      return CombinerId::Stouffer;
    case Method::Minimum:
      return CombinerId::Minimum;
    case Method::Bonferroni:
      return CombinerId::Bonferroni;
    default:
      throw ParameterError("not a p-value method");
  }
}

MergeRule rule_of(Method m) {
  switch (m) {
    case Method::EProduct:
      return MergeRule::Product;
    case Method::EMean:
      return MergeRule::ArithMean;
    case Method::EHarmonic:
      return MergeRule::HarmMean;
    default:
      throw ParameterError("not an e-value method");
  }
}

// Evaluates every configured method on one vector of marginal p-values.
class PipelineEvaluator {
 public:
  explicit PipelineEvaluator(const ExperimentConfig& cfg) : cfg_(cfg) {
    if (std::any_of(cfg.methods.begin(), cfg.methods.end(), is_e_method)) {
      bf_.emplace(BayesFactorSpec::make(cfg.model, cfg.pattern.r, cfg.effective_null_kind(),
                                        cfg.prior));
    }
  }

  // Writes one combined p-value per method into out. `p` is sorted in place.
  void evaluate(std::span<double> p, std::span<double> e_scratch, std::span<double> out) const {
    const auto gamma = static_cast<std::size_t>(cfg_.gamma);
    if (bf_) {
      for (std::size_t i = 0; i < p.size(); ++i) e_scratch[i] = adjusted_e(*bf_, Probability(p[i]));
      std::sort(e_scratch.begin(), e_scratch.end());
    }
    std::sort(p.begin(), p.end());
    const auto largest = std::span<const double>(p).subspan(gamma - 1);
    const auto smallest_e = std::span<const double>(e_scratch).first(p.size() - gamma + 1);
    for (std::size_t m = 0; m < cfg_.methods.size(); ++m) {
      const Method method = cfg_.methods[m];
      out[m] = is_e_method(method) ? e_to_p(e_merge(smallest_e, rule_of(method))).value()
                                   : combine(combiner_of(method), largest).value();
    }
  }

 private:
  const ExperimentConfig& cfg_;
  std::optional<BayesFactorSpec> bf_;
};

// hits[m * grid.size() + j] = number of repetitions with combined p of method m <= grid[j].
std::vector<std::uint64_t> count_hits(const ExperimentConfig& cfg, const std::vector<double>& grid) {
  cfg.validate();
  if (grid.empty() || !std::is_sorted(grid.begin(), grid.end())) {
    throw ParameterError("ecdf grid must be nonempty and sorted ascending");
  }
  for (double t : grid) {
    if (!(t >= 0.0 && t <= 1.0)) throw ParameterError("ecdf grid points must lie in [0,1]");
  }

  const PipelineEvaluator evaluator(cfg);
  const std::size_t n_methods = cfg.methods.size();
  const std::size_t n_grid = grid.size();
  const std::size_t s = cfg.pattern.size();
  const std::uint64_t n_chunks = (cfg.repetitions + cfg.chunk_size - 1) / cfg.chunk_size;
  const unsigned n_workers =
      static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(cfg.workers, n_chunks)));

  std::atomic<std::uint64_t> next_chunk{0};
  std::vector<std::vector<std::uint64_t>> partial(n_workers,
                                                  std::vector<std::uint64_t>(n_methods * (n_grid + 1)));
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&](unsigned worker) {
    try {
      // first_at[m * (n_grid + 1) + j]: repetitions whose first grid point >= p is grid[j].
      auto& first_at = partial[worker];
      std::vector<double> p(s);
      std::vector<double> e(s);
      std::vector<double> combined(n_methods);
      for (std::uint64_t chunk = next_chunk++; chunk < n_chunks; chunk = next_chunk++) {
        RngStream rng(cfg.seed, chunk);
        const std::uint64_t begin = chunk * cfg.chunk_size;
        const std::uint64_t end = std::min(cfg.repetitions, begin + cfg.chunk_size);
        for (std::uint64_t rep = begin; rep < end; ++rep) {
          const ThetaVector theta = sample_theta(cfg.pattern, rng);
          sample_p_values(cfg.model, theta, rng, p);
          evaluator.evaluate(p, e, combined);
          for (std::size_t m = 0; m < n_methods; ++m) {
            const auto j = static_cast<std::size_t>(
                std::lower_bound(grid.begin(), grid.end(), combined[m]) - grid.begin());
            ++first_at[m * (n_grid + 1) + j];
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next_chunk = n_chunks;
    }
  };

  if (n_workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<std::uint64_t> hits(n_methods * n_grid, 0);
  for (std::size_t m = 0; m < n_methods; ++m) {
    std::uint64_t running = 0;
    for (std::size_t j = 0; j < n_grid; ++j) {
      for (const auto& acc : partial) running += acc[m * (n_grid + 1) + j];
      hits[m * n_grid + j] = running;
    }
  }
  return hits;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string_view method_name(Method m) noexcept {
  switch (m) {
    case Method::Fisher:
      return "fisher";
    case Method::Stouffer:
      return "stouffer";
    case Method::Minimum:
      return "minimum";
    case Method::Bonferroni:
      return "bonferroni";
    case Method::EProduct:
      return "e-product";
    case Method::EMean:
      return "e-mean";
    case Method::EHarmonic:
      return "e-harmonic";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  const std::string key = lower(name);
  for (Method m : kAllMethods) {
    if (key == method_name(m)) return m;
  }
  if (key == "min") return Method::Minimum;
  if (key == "eproduct" || key == "e_product") return Method::EProduct;
  if (key == "emean" || key == "e_mean") return Method::EMean;
  if (key == "eharmonic" || key == "e_harmonic") return Method::EHarmonic;
  throw ParameterError("unknown method '" + std::string(name) + "'");
}

bool is_e_method(Method m) noexcept {
  return m == Method::EProduct || m == Method::EMean || m == Method::EHarmonic;
}

std::vector<Method> figure_methods() {
  return {Method::Stouffer, Method::Fisher, Method::Minimum, Method::EProduct};
}

std::vector<Method> all_methods() { return {std::begin(kAllMethods), std::end(kAllMethods)}; }

void ExperimentConfig::validate() const {
  const std::size_t s = pattern.size();
  if (s < 2) throw ParameterError("pattern needs at least two studies");
  if (gamma < 1 || static_cast<std::size_t>(gamma) > s) {
    throw ParameterError("gamma must lie in [1, s]; got gamma = " + std::to_string(gamma) +
                         " with s = " + std::to_string(s));
  }
  if (methods.empty()) throw ParameterError("at least one method is required");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ParameterError("alpha must lie in [0,1]");
  if (repetitions == 0) throw ParameterError("repetitions must be positive");
  if (chunk_size == 0) throw ParameterError("chunk size must be positive");
  if (!(pattern.r > 0.0)) throw ParameterError("signal strength r must be positive");
}

NullKind ExperimentConfig::effective_null_kind() const {
  if (null_kind) return *null_kind;
  return pattern.conservative() ? NullKind::Composite : NullKind::Simple;
}

SimResult make_result(Method method, std::uint64_t hits, std::uint64_t repetitions) {
  const double n = static_cast<double>(repetitions);
  const double estimate = static_cast<double>(hits) / n;
  return {method, estimate, std::sqrt(estimate * (1.0 - estimate) / n), repetitions};
}

std::vector<SimResult> run_power(const ExperimentConfig& cfg) {
  const auto hits = count_hits(cfg, {cfg.alpha});
  std::vector<SimResult> out;
  out.reserve(cfg.methods.size());
  for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
    out.push_back(make_result(cfg.methods[m], hits[m], cfg.repetitions));
  }
  return out;
}

std::optional<std::string> alternative_warning(const ExperimentConfig& cfg) {
  const std::size_t false_nulls = cfg.pattern.false_nulls();
  if (false_nulls >= static_cast<std::size_t>(cfg.gamma)) return std::nullopt;
  return "pattern '" + cfg.pattern.label + "' has " + std::to_string(false_nulls) +
         " false nulls < gamma = " + std::to_string(cfg.gamma) +
         "; H_s^gamma is true and the estimate is a false rejection rate";
}

RelativePower relative_power(const std::vector<SimResult>& results) {
  if (results.empty()) throw ParameterError("relative_power needs at least one result");
  double best = 0.0;
  for (const auto& r : results) best = std::max(best, r.estimate);
  RelativePower out;
  out.values.reserve(results.size());
  for (const auto& r : results) out.values.emplace_back(r.method, best > 0.0 ? r.estimate / best : 0.0);
  if (best == 0.0) out.warning = "all estimates are zero; relative power set to 0";
  return out;
}

PatternSpec with_conservative_nulls(const PatternSpec& base, int conservative_count) {
  const auto zeros = std::count(base.mu_base.begin(), base.mu_base.end(), 0.0);
  if (conservative_count < 0 || conservative_count > zeros) {
    throw ParameterError("conservative count must lie in [0, " + std::to_string(zeros) + "], got " +
                         std::to_string(conservative_count));
  }
  PatternSpec out = base;
  int remaining = conservative_count;
  for (double& m : out.mu_base) {
    if (remaining == 0) break;
    if (m == 0.0) {
      m = -1.0;
      --remaining;
    }
  }
  out.label = base.label + "+" + std::to_string(conservative_count);
  return out;
}

std::vector<SimResult> run_null_ecdf(const ExperimentConfig& cfg, int conservative_count) {
  ExperimentConfig shifted = cfg;
  shifted.pattern = with_conservative_nulls(cfg.pattern, conservative_count);
  return run_power(shifted);
}

std::vector<EcdfCurve> run_ecdf_curve(const ExperimentConfig& cfg, const std::vector<double>& grid) {
  const auto hits = count_hits(cfg, grid);
  std::vector<EcdfCurve> out;
  out.reserve(cfg.methods.size());
  for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
    EcdfCurve curve{cfg.methods[m], {}, {}};
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const SimResult r = make_result(cfg.methods[m], hits[m * grid.size() + j], cfg.repetitions);
      curve.values.push_back(r.estimate);
      curve.std_errors.push_back(r.std_error);
    }
    out.push_back(std::move(curve));
  }
  return out;
}

std::vector<GammaSweepRow> gamma_sweep(const ExperimentConfig& cfg, const std::vector<int>& gammas) {
  if (gammas.empty()) throw ParameterError("gamma sweep needs at least one gamma");
  std::vector<GammaSweepRow> rows;
  rows.reserve(gammas.size());
  for (int gamma : gammas) {
    ExperimentConfig at = cfg;
    at.gamma = gamma;
    auto results = run_power(at);
    auto relative = relative_power(results);
    rows.push_back({gamma, std::move(results), std::move(relative)});
  }
  return rows;
}

}  // namespace pcomb
