#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <span>
#include <string>
#include <vector>

namespace wcg {

// Neumaier-compensated summation. Result does not depend on magnitude
// ordering nearly as much as naive summation; used wherever aggregates
// must be stable and reproducible.
inline double stable_sum(std::span<const double> values) {
  double sum = 0.0;
  double comp = 0.0;
  for (double v : values) {
    double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  return sum + comp;
}

inline double mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  return stable_sum(values) / static_cast<double>(values.size());
}

// Sample variance (n-1 denominator).
inline double sample_variance(std::span<const double> values) {
  const size_t n = values.size();
  if (n < 2) return 0.0;
  const double m = mean(values);
  std::vector<double> sq(n);
  for (size_t i = 0; i < n; ++i) {
    const double d = values[i] - m;
    sq[i] = d * d;
  }
  return stable_sum(sq) / static_cast<double>(n - 1);
}

// Population variance (n denominator).
inline double population_variance(std::span<const double> values) {
  const size_t n = values.size();
  if (n == 0) return 0.0;
  const double m = mean(values);
  std::vector<double> sq(n);
  for (size_t i = 0; i < n; ++i) {
    const double d = values[i] - m;
    sq[i] = d * d;
  }
  return stable_sum(sq) / static_cast<double>(n);
}

// Reports serialize numbers with 9 significant digits so goldens diff
// cleanly across runs.
inline std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

// Quantize to the 9-significant-digit grid used by report serialization.
inline double round_g9(double v) {
  return std::strtod(format_g9(v).c_str(), nullptr);
}

}  // namespace wcg
