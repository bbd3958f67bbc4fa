#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wcg/numeric.hpp"

namespace wcg {

enum class TestSide { TwoSided, Greater, Less };

inline const char* test_side_name(TestSide s) {
  switch (s) {
    case TestSide::TwoSided: return "two-sided";
    case TestSide::Greater: return "greater";
    case TestSide::Less: return "less";
  }
  return "?";
}

// Regularized incomplete beta I_x(a, b) via Lentz-style continued
// fraction with the usual symmetry switch for fast convergence.
inline double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::domain_error("regularized_incomplete_beta: parameters must be positive");
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("regularized_incomplete_beta: x outside [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const auto continued_fraction = [](double aa, double bb, double xx) {
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-12;
    constexpr int max_iter = 300;
    double c = 1.0;
    double d = 1.0 - (aa + bb) * xx / (aa + 1.0);
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double result = d;
    for (int m = 1; m <= max_iter; ++m) {
      const double m2 = 2.0 * m;
      // even step
      double num = m * (bb - m) * xx / ((aa + m2 - 1.0) * (aa + m2));
      d = 1.0 + num * d;
      if (std::abs(d) < tiny) d = tiny;
      c = 1.0 + num / c;
      if (std::abs(c) < tiny) c = tiny;
      d = 1.0 / d;
      result *= d * c;
      // odd step
      num = -(aa + m) * (aa + bb + m) * xx / ((aa + m2) * (aa + m2 + 1.0));
      d = 1.0 + num * d;
      if (std::abs(d) < tiny) d = tiny;
      c = 1.0 + num / c;
      if (std::abs(c) < tiny) c = tiny;
      d = 1.0 / d;
      const double delta = d * c;
      result *= delta;
      if (std::abs(delta - 1.0) < eps) return result;
    }
    return result;  // converged to working precision in practice
  };

  const double log_prefix = a * std::log(x) + b * std::log1p(-x) -
                            (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
  if (x < (a + 1.0) / (a + b + 2.0))
    return std::exp(log_prefix) * continued_fraction(a, b, x) / a;
  return 1.0 - std::exp(b * std::log1p(-x) + a * std::log(x) -
                        (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b))) *
                   continued_fraction(b, a, 1.0 - x) / b;
}

// CDF of Student's t with (possibly fractional) df.
inline double t_cdf(double t, double df) {
  const double x = df / (t * t + df);
  const double half_tail = 0.5 * regularized_incomplete_beta(df / 2.0, 0.5, x);
  return t >= 0.0 ? 1.0 - half_tail : half_tail;
}

// CDF of the F distribution with (d1, d2) df.
inline double f_cdf(double f, double d1, double d2) {
  if (f <= 0.0) return 0.0;
  return regularized_incomplete_beta(d1 / 2.0, d2 / 2.0, d1 * f / (d1 * f + d2));
}

struct TestResult {
  std::string test;      // "welch-t" or "f"
  double statistic = 0;  // t or F
  double df1 = 0;        // Welch-Satterthwaite df, or numerator df
  double df2 = 0;        // denominator df (F only)
  double p_value = 1.0;
  TestSide side = TestSide::TwoSided;
};

inline double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("pearson: need two equal-length samples of size >= 2");
  const double mx = mean(x), my = mean(y);
  const size_t n = x.size();
  std::vector<double> xy(n), xx(n), yy(n);
  for (size_t i = 0; i < n; ++i) {
    xy[i] = (x[i] - mx) * (y[i] - my);
    xx[i] = (x[i] - mx) * (x[i] - mx);
    yy[i] = (y[i] - my) * (y[i] - my);
  }
  const double sxx = stable_sum(xx), syy = stable_sum(yy);
  if (!(sxx > 0.0) || !(syy > 0.0))
    throw std::invalid_argument("pearson: zero variance input");
  return stable_sum(xy) / std::sqrt(sxx * syy);
}

// Unequal-variance t-test with Welch-Satterthwaite degrees of freedom.
// side Greater tests H1: mean(a) > mean(b).
inline TestResult welch_t(std::span<const double> a, std::span<const double> b,
                          TestSide side = TestSide::TwoSided) {
  if (a.size() < 2 || b.size() < 2)
    throw std::invalid_argument("welch_t: each sample needs >= 2 observations");
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double va = sample_variance(a), vb = sample_variance(b);
  const double sa = va / na, sb = vb / nb;
  if (!(sa + sb > 0.0))
    throw std::invalid_argument("welch_t: both samples have zero variance");
  const double t = (mean(a) - mean(b)) / std::sqrt(sa + sb);
  const double df = (sa + sb) * (sa + sb) /
                    (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
  TestResult r;
  r.test = "welch-t";
  r.statistic = t;
  r.df1 = df;
  r.side = side;
  switch (side) {
    case TestSide::TwoSided:
      r.p_value = 2.0 * (1.0 - t_cdf(std::abs(t), df));
      break;
    case TestSide::Greater:
      r.p_value = 1.0 - t_cdf(t, df);
      break;
    case TestSide::Less:
      r.p_value = t_cdf(t, df);
      break;
  }
  r.p_value = std::clamp(r.p_value, 0.0, 1.0);
  return r;
}

// Variance-ratio F-test, F = var(a)/var(b). side Less tests H1:
// var(a) < var(b).
inline TestResult f_test(std::span<const double> a, std::span<const double> b,
                         TestSide side = TestSide::TwoSided) {
  if (a.size() < 2 || b.size() < 2)
    throw std::invalid_argument("f_test: each sample needs >= 2 observations");
  const double va = sample_variance(a), vb = sample_variance(b);
  if (!(vb > 0.0)) throw std::invalid_argument("f_test: zero variance in denominator sample");
  const double f = va / vb;
  const double d1 = static_cast<double>(a.size()) - 1.0;
  const double d2 = static_cast<double>(b.size()) - 1.0;
  TestResult r;
  r.test = "f";
  r.statistic = f;
  r.df1 = d1;
  r.df2 = d2;
  r.side = side;
  const double cdf = f_cdf(f, d1, d2);
  switch (side) {
    case TestSide::TwoSided:
      r.p_value = 2.0 * std::min(cdf, 1.0 - cdf);
      break;
    case TestSide::Greater:
      r.p_value = 1.0 - cdf;
      break;
    case TestSide::Less:
      r.p_value = cdf;
      break;
  }
  r.p_value = std::clamp(r.p_value, 0.0, 1.0);
  return r;
}

}  // namespace wcg
