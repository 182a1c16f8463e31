#pragma once

// Small statistics kit: Welch's unequal-variance t-test and the
// Mann-Kendall trend test.  p-values go through a Lentz continued-fraction
// regularized incomplete beta (relative tolerance 1e-12).

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>

namespace asym {

inline double mean_of(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

// Unbiased sample variance.
inline double variance_of(std::span<const double> x) {
  if (x.size() < 2) throw std::domain_error("variance_of: need at least 2 samples");
  const double m = mean_of(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size() - 1);
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Regularized incomplete beta I_x(a, b) by Lentz's continued fraction.
inline double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("incomplete beta: a,b must be > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  // Use the symmetry I_x(a,b) = 1 - I_{1-x}(b,a) to keep the fraction in
  // its fast-converging region x < (a+1)/(a+b+2).
  if (x > (a + 1.0) / (a + b + 2.0))
    return 1.0 - regularized_incomplete_beta(b, a, 1.0 - x);

  const double ln_front = a * std::log(x) + b * std::log1p(-x) -
                          std::log(a) - std::lgamma(a) - std::lgamma(b) +
                          std::lgamma(a + b);
  const double front = std::exp(ln_front);

  constexpr double tiny = 1e-300;
  double c = 1.0, d = 1.0 - (a + b) * x / (a + 1.0);
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double f = d;
  for (int m = 1; m <= 500; ++m) {
    const double dm = static_cast<double>(m);
    // Even step.
    double num = dm * (b - dm) * x / ((a + 2.0 * dm - 1.0) * (a + 2.0 * dm));
    d = 1.0 + num * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + num / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    f *= c * d;
    // Odd step.
    num = -(a + dm) * (a + b + dm) * x / ((a + 2.0 * dm) * (a + 2.0 * dm + 1.0));
    d = 1.0 + num * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + num / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-12) break;
  }
  return front * f;
}

// Two-sided p-value for Student's t with nu degrees of freedom:
// p = I_{nu/(nu+t^2)}(nu/2, 1/2).
inline double student_t_two_sided_p(double t, double nu) {
  if (!(nu > 0.0)) throw std::domain_error("student_t_two_sided_p: nu must be > 0");
  if (std::isinf(t)) return 0.0;
  return regularized_incomplete_beta(nu / 2.0, 0.5, nu / (nu + t * t));
}

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;  // two-sided
};

// Welch's t-test with Welch-Satterthwaite degrees of freedom.
// Degenerate samples (both variances zero): equal means give p = 1,
// different means are a sure difference, p = 0.
inline WelchResult welch_t(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2)
    throw std::domain_error("welch_t: each sample needs at least 2 observations");
  const double ma = mean_of(a), mb = mean_of(b);
  const double va = variance_of(a), vb = variance_of(b);
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double qa = va / na, qb = vb / nb;
  WelchResult r;
  if (qa + qb == 0.0) {
    r.t = ma == mb ? 0.0 : (ma > mb ? INFINITY : -INFINITY);
    r.df = na + nb - 2.0;
    r.p = ma == mb ? 1.0 : 0.0;
    return r;
  }
  r.t = (ma - mb) / std::sqrt(qa + qb);
  r.df = (qa + qb) * (qa + qb) /
         (qa * qa / (na - 1.0) + qb * qb / (nb - 1.0));
  r.p = student_t_two_sided_p(r.t, r.df);
  return r;
}

struct MannKendallResult {
  long long s = 0;     // sum of pairwise signs
  double var_s = 0.0;  // tie-corrected variance
  double z = 0.0;      // continuity-corrected normal score
  double p = 1.0;      // two-sided
};

// Mann-Kendall test for a monotone trend; s < 0 indicates decreasing.
inline MannKendallResult mann_kendall(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 3) throw std::domain_error("mann_kendall: need at least 3 observations");
  MannKendallResult r;
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      r.s += x[j] > x[i] ? 1 : (x[j] < x[i] ? -1 : 0);

  // Tie correction: group identical values.
  double tie_term = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t t = 0;
    bool first = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (x[j] == x[i]) {
        if (j < i) { first = false; break; }
        ++t;
      }
    }
    if (first && t > 1) {
      const double td = static_cast<double>(t);
      tie_term += td * (td - 1.0) * (2.0 * td + 5.0);
    }
  }
  const double nd = static_cast<double>(n);
  r.var_s = (nd * (nd - 1.0) * (2.0 * nd + 5.0) - tie_term) / 18.0;
  if (r.var_s <= 0.0) {  // all values identical
    r.z = 0.0;
    r.p = 1.0;
    return r;
  }
  const double sd = std::sqrt(r.var_s);
  if (r.s > 0) r.z = (static_cast<double>(r.s) - 1.0) / sd;
  else if (r.s < 0) r.z = (static_cast<double>(r.s) + 1.0) / sd;
  else r.z = 0.0;
  r.p = 2.0 * (1.0 - normal_cdf(std::abs(r.z)));
  return r;
}

}  // namespace asym
