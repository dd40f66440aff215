#include "pcomb/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "pcomb/errors.hpp"

namespace pcomb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSqrt2 = 1.41421356237309504880;
constexpr double kInvSqrt2Pi = 0.398942280401432677940;
constexpr double kLogSqrt2Pi = 0.918938533204672741780;
constexpr double kSqrt2Pi = 2.50662827463100050242;

void require_not_nan(double x, const char* where) {
  if (std::isnan(x)) throw DomainError(std::string(where) + ": NaN argument");
}

void require_even_dof(int dof) {
  if (dof <= 0 || dof % 2 != 0) {
    throw UnsupportedParameter("chi-square cdf is implemented for positive even dof only, got " +
                               std::to_string(dof));
  }
}

// Lower-tail quantile for u in (0, 0.5]. Rational start (Acklam) plus Halley refinement.
double lower_tail_quantile(double u) {
  static constexpr std::array<double, 6> a = {-3.969683028665376e+01, 2.209460984245205e+02,
                                              -2.759285104469687e+02, 1.383577518672690e+02,
                                              -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b = {-5.447609879822406e+01, 1.615858368580409e+02,
                                              -1.556989798598866e+02, 6.680131188771972e+01,
                                              -1.328068155288572e+01};
  static constexpr std::array<double, 6> c = {-7.784894002430293e-03, -3.223964580411365e-01,
                                              -2.400758277161838e+00, -2.549732539343734e+00,
                                              4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d = {7.784695709041462e-03, 3.224671290700398e-01,
                                              2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double kLow = 0.02425;

  double x;
  if (u < kLow) {
    const double q = std::sqrt(-2.0 * std::log(u));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else {
    const double q = u - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }

  // exp(x^2/2) overflows below u ~ 1e-300; the rational start is already good to ~1e-9 there.
  if (u < 1e-300) return x;
  for (int iter = 0; iter < 2; ++iter) {
    const double e = 0.5 * std::erfc(-x / kSqrt2) - u;
    const double t = e * kSqrt2Pi * std::exp(0.5 * x * x);
    x -= t / (1.0 + 0.5 * x * t);
  }
  return x;
}

// log of e^{-h} sum_{j in [from, to)} h^j / j!, via log-sum-exp.
double log_poisson_terms(double h, int from, int to) {
  if (from >= to) return -kInf;
  const double log_h = std::log(h);
  std::vector<double> logs;
  logs.reserve(static_cast<std::size_t>(to - from));
  double peak = -kInf;
  for (int j = from; j < to; ++j) {
    const double lj = (j == 0 ? 0.0 : j * log_h) - h - std::lgamma(j + 1.0);
    logs.push_back(lj);
    peak = std::max(peak, lj);
  }
  if (peak == -kInf) return -kInf;
  double sum = 0.0;
  for (double lj : logs) sum += std::exp(lj - peak);
  return peak + std::log(sum);
}

// e^{-h} sum_{j >= k} h^j / j! for h < k, where the terms decrease geometrically.
double poisson_upper_series(double h, int k) {
  double log_term = k * std::log(h) - h - std::lgamma(k + 1.0);
  double term = std::exp(log_term);
  double sum = 0.0;
  for (int j = k; term > 0.0; ++j) {
    sum += term;
    if (term < sum * 1e-17) break;
    term *= h / (j + 1);
  }
  return sum;
}

struct ChiTails {
  double lower;
  double upper;
};

ChiTails chi2_tails(double x, int dof) {
  require_not_nan(x, "chi2");
  require_even_dof(dof);
  if (x < 0.0) throw DomainError("chi2: negative argument");
  if (x == 0.0) return {0.0, 1.0};
  if (std::isinf(x)) return {1.0, 0.0};
  const int k = dof / 2;
  const double h = 0.5 * x;
  if (k == 1) return {-std::expm1(-h), std::exp(-h)};
  if (h < k) {
    const double lower = poisson_upper_series(h, k);
    return {lower, 1.0 - lower};
  }
  const double upper = std::exp(log_poisson_terms(h, 0, k));
  return {1.0 - upper, upper};
}

Probability clamp_probability(double v) { return Probability(std::clamp(v, 0.0, 1.0)); }

// Kronrod 15-point nodes (non-negative half) and weights; Gauss 7-point weights on the
// odd-indexed Kronrod nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod_15(const std::function<double(double)>& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double f_center = f(center);
  double kronrod = f_center * kWgk[7];
  double gauss = f_center * kWg[3];
  double abs_kronrod = std::abs(kronrod);
  std::array<double, 7> f_lo{};
  std::array<double, 7> f_hi{};
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f_lo[j] = f(center - dx);
    f_hi[j] = f(center + dx);
    const double pair = f_lo[j] + f_hi[j];
    kronrod += kWgk[j] * pair;
    abs_kronrod += kWgk[j] * (std::abs(f_lo[j]) + std::abs(f_hi[j]));
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double asc = kWgk[7] * std::abs(f_center - mean);
  for (std::size_t j = 0; j < 7; ++j) {
    asc += kWgk[j] * (std::abs(f_lo[j] - mean) + std::abs(f_hi[j] - mean));
  }

  const double value = kronrod * half;
  asc *= std::abs(half);
  abs_kronrod *= std::abs(half);
  double error = std::abs((kronrod - gauss) * half);
  // QUADPACK's error scaling.
  if (asc != 0.0 && error != 0.0) error = asc * std::min(1.0, std::pow(200.0 * error / asc, 1.5));
  const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * abs_kronrod;
  if (abs_kronrod > std::numeric_limits<double>::min() / (50.0 * 2.2e-16)) {
    error = std::max(error, roundoff);
  }
  return {lo, hi, value, error};
}

}  // namespace

Probability::Probability(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw DomainError("probability outside [0,1]: " + std::to_string(value));
  }
}

Probability std_normal_cdf(double x) {
  require_not_nan(x, "std_normal_cdf");
  return clamp_probability(0.5 * std::erfc(-x / kSqrt2));
}

Probability std_normal_sf(double x) {
  require_not_nan(x, "std_normal_sf");
  return clamp_probability(0.5 * std::erfc(x / kSqrt2));
}

double std_normal_pdf(double x) noexcept { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double log_std_normal_cdf(double x) {
  require_not_nan(x, "log_std_normal_cdf");
  if (x == -kInf) return -kInf;
  if (x > -35.0) {
    if (x > 5.0) return std::log1p(-0.5 * std::erfc(x / kSqrt2));
    return std::log(0.5 * std::erfc(-x / kSqrt2));
  }
  const double inv2 = 1.0 / (x * x);
  const double series = 1.0 - inv2 * (1.0 - 3.0 * inv2 * (1.0 - 5.0 * inv2 * (1.0 - 7.0 * inv2)));
  return -0.5 * x * x - std::log(-x) - kLogSqrt2Pi + std::log(series);
}

double log_std_normal_interval(double a, double b) {
  require_not_nan(a, "log_std_normal_interval");
  require_not_nan(b, "log_std_normal_interval");
  if (!(a < b)) return -kInf;
  if (b <= 0.0) {
    const double lb = log_std_normal_cdf(b);
    const double la = log_std_normal_cdf(a);
    return lb + std::log1p(-std::exp(la - lb));
  }
  if (a >= 0.0) {
    const double la = log_std_normal_cdf(-a);
    const double lb = log_std_normal_cdf(-b);
    return la + std::log1p(-std::exp(lb - la));
  }
  return std::log1p(-(0.5 * std::erfc(-a / kSqrt2) + 0.5 * std::erfc(b / kSqrt2)));
}

double std_normal_quantile(Probability u) {
  const double v = u.value();
  if (v == 0.0) return -kInf;
  if (v == 1.0) return kInf;
  if (v > 0.5) return -lower_tail_quantile(1.0 - v);
  return lower_tail_quantile(v);
}

Probability chi2_cdf(double x, int dof) { return clamp_probability(chi2_tails(x, dof).lower); }

Probability chi2_sf(double x, int dof) { return clamp_probability(chi2_tails(x, dof).upper); }

Probability beta_1_n_cdf(Probability t, int n) {
  if (n < 1) throw ParameterError("beta_1_n_cdf: n must be positive");
  return clamp_probability(-std::expm1(n * std::log1p(-t.value())));
}

QuadratureResult integrate_with_error(const std::function<double(double)>& f, double lo,
                                      double hi, const QuadratureConfig& cfg) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw ParameterError("integrate: need finite lo < hi");
  }
  if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol > 0.0) || cfg.max_subdivisions == 0) {
    throw ParameterError("integrate: tolerances and max_subdivisions must be positive");
  }

  std::priority_queue<Segment> heap;
  Segment first = gauss_kronrod_15(f, lo, hi);
  double total = first.value;
  double total_error = first.error;
  heap.push(first);
  std::size_t segments = 1;

  auto converged = [&] {
    return total_error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
  };

  while (!converged()) {
    if (!std::isfinite(total)) {
      throw ConvergenceError("integrate: non-finite integrand", total, total_error);
    }
    if (segments >= cfg.max_subdivisions) {
      throw ConvergenceError("integrate: max_subdivisions reached", total, total_error);
    }
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Segment left = gauss_kronrod_15(f, worst.lo, mid);
    const Segment right = gauss_kronrod_15(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++segments;
  }

  // Re-sum to shed the drift of the incremental updates.
  double value = 0.0;
  double error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  return {value, error, segments};
}

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureConfig& cfg) {
  return integrate_with_error(f, lo, hi, cfg).value;
}

}  // namespace pcomb
