#include "oracles.hpp"

#include <algorithm>
#include <cmath>

#include <mpfr.h>

namespace oracle {

namespace {

constexpr mpfr_prec_t kBits = 256;

struct Mp {
  mpfr_t v;
  Mp() { mpfr_init2(v, kBits); }
  explicit Mp(double d) : Mp() { mpfr_set_d(v, d, MPFR_RNDN); }
  ~Mp() { mpfr_clear(v); }
  Mp(const Mp&) = delete;
  Mp& operator=(const Mp&) = delete;
  double get() const { return mpfr_get_d(v, MPFR_RNDN); }
};

// Phi(x) = erfc(-x / sqrt 2) / 2 into out.
void mp_normal_cdf(mpfr_t out, const mpfr_t x) {
  Mp root2;
  mpfr_sqrt_ui(root2.v, 2, MPFR_RNDN);
  mpfr_div(out, x, root2.v, MPFR_RNDN);
  mpfr_neg(out, out, MPFR_RNDN);
  mpfr_erfc(out, out, MPFR_RNDN);
  mpfr_div_ui(out, out, 2, MPFR_RNDN);
}

}  // namespace

double normal_cdf(double x) {
  Mp in(x);
  Mp out;
  mp_normal_cdf(out.v, in.v);
  return out.get();
}

double normal_quantile(double u) {
  if (u <= 0.0) return -INFINITY;
  if (u >= 1.0) return INFINITY;
  Mp lo(-40.0);
  Mp hi(40.0);
  Mp mid;
  Mp cdf;
  Mp target(u);
  for (int i = 0; i < 240; ++i) {
    mpfr_add(mid.v, lo.v, hi.v, MPFR_RNDN);
    mpfr_div_ui(mid.v, mid.v, 2, MPFR_RNDN);
    mp_normal_cdf(cdf.v, mid.v);
    if (mpfr_cmp(cdf.v, target.v) < 0) {
      mpfr_set(lo.v, mid.v, MPFR_RNDN);
    } else {
      mpfr_set(hi.v, mid.v, MPFR_RNDN);
    }
  }
  return mid.get();
}

double chi2_sf_even(double x, int dof) {
  // e^{-h} sum_{j < k} h^j / j!, h = x / 2, k = dof / 2
  Mp h(x / 2.0);
  Mp term;
  Mp sum;
  mpfr_set_ui(term.v, 1, MPFR_RNDN);
  mpfr_set_ui(sum.v, 0, MPFR_RNDN);
  for (int j = 0; j < dof / 2; ++j) {
    if (j > 0) {
      mpfr_mul(term.v, term.v, h.v, MPFR_RNDN);
      mpfr_div_ui(term.v, term.v, static_cast<unsigned long>(j), MPFR_RNDN);
    }
    mpfr_add(sum.v, sum.v, term.v, MPFR_RNDN);
  }
  Mp decay;
  mpfr_neg(decay.v, h.v, MPFR_RNDN);
  mpfr_exp(decay.v, decay.v, MPFR_RNDN);
  mpfr_mul(sum.v, sum.v, decay.v, MPFR_RNDN);
  return sum.get();
}

double tanh_sinh(const std::function<double(double)>& f, double a, double b, double tol) {
  using ld = long double;
  const ld half = (static_cast<ld>(b) - a) / 2;
  const ld pi_2 = std::acos(-1.0L) / 2;
  // Node at parameter t: distance from the nearer endpoint is half * 2 / (exp(2u) + 1).
  auto contribution = [&](ld t) -> ld {
    const ld u = pi_2 * std::sinh(t);
    const ld gap = half * 2 / (std::exp(2 * std::abs(u)) + 1);
    if (gap <= 0) return 0;
    const ld weight = pi_2 * std::cosh(t) / (std::cosh(u) * std::cosh(u));
    const ld x = t < 0 ? a + gap : b - gap;
    if (x <= a || x >= b) return 0;
    return weight * static_cast<ld>(f(static_cast<double>(x)));
  };
  constexpr ld t_max = 4.0L;
  ld h = 0.5L;
  ld sum = contribution(0);
  for (ld t = h; t <= t_max; t += h) sum += contribution(t) + contribution(-t);
  ld estimate = sum * h * half;
  for (int level = 0; level < 14; ++level) {
    h /= 2;
    for (ld t = h; t <= t_max; t += 2 * h) sum += contribution(t) + contribution(-t);
    const ld next = sum * h * half;
    const bool done = std::abs(next - estimate) <= tol * std::max<ld>(1, std::abs(next));
    estimate = next;
    if (done && level > 2) break;
  }
  return static_cast<double>(estimate);
}

double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, std::abs(f - static_cast<double>(i) / n), std::abs(static_cast<double>(i + 1) / n - f)});
  }
  return d;
}

double binomial_se(double q, double n) { return std::sqrt(q * (1.0 - q) / n); }

}  // namespace oracle
