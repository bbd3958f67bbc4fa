#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "wcg/numeric.hpp"

namespace wcg {

// Raw perceptual-difference features: one row per image, one column per
// target gamut. Values are normalized by the maximum possible MOS before
// any criterion is computed.
struct FeatureMatrix {
  std::vector<std::vector<double>> rows;
  std::vector<std::string> column_names;
  double scale = 2.0;  // maximum possible MOS

  size_t row_count() const { return rows.size(); }
  size_t column_count() const { return rows.empty() ? 0 : rows[0].size(); }

  void validate() const {
    if (rows.empty()) throw std::invalid_argument("FeatureMatrix: no rows");
    const size_t n = rows[0].size();
    if (n == 0) throw std::invalid_argument("FeatureMatrix: no columns");
    for (const auto& r : rows) {
      if (r.size() != n) throw std::invalid_argument("FeatureMatrix: ragged rows");
      for (double v : r)
        if (!(v >= 0.0 && v <= scale))
          throw std::invalid_argument("FeatureMatrix: value outside [0, scale]");
    }
  }

  std::vector<double> normalized_column(size_t i) const {
    std::vector<double> z(rows.size());
    for (size_t r = 0; r < rows.size(); ++r) z[r] = rows[r][i] / scale;
    return z;
  }

  std::vector<std::vector<double>> normalized_rows() const {
    std::vector<std::vector<double>> z(rows.size());
    for (size_t r = 0; r < rows.size(); ++r) {
      z[r].resize(rows[r].size());
      for (size_t c = 0; c < rows[r].size(); ++c) z[r][c] = rows[r][c] / scale;
    }
    return z;
  }
};

// Range of the normalized perceptual differences in one dimension.
inline double coverage(const std::vector<double>& z) {
  if (z.empty()) throw std::invalid_argument("coverage: empty column");
  const auto [lo, hi] = std::minmax_element(z.begin(), z.end());
  return *hi - *lo;
}

namespace detail {

struct P2 {
  double x, y;
  bool operator<(const P2& o) const { return x < o.x || (x == o.x && y < o.y); }
  bool operator==(const P2& o) const { return x == o.x && y == o.y; }
};

inline double cross(P2 o, P2 a, P2 b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew monotone chain; returns hull vertices in CCW order.
inline std::vector<P2> convex_hull(std::vector<P2> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<P2> hull(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {  // lower
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  const size_t lower = k + 1;
  for (size_t i = n - 1; i-- > 0;) {  // upper
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

inline double polygon_area(const std::vector<P2>& poly) {
  if (poly.size() < 3) return 0.0;
  double a = 0.0;
  for (size_t i = 0; i < poly.size(); ++i) {
    const P2& p = poly[i];
    const P2& q = poly[(i + 1) % poly.size()];
    a += p.x * q.y - q.x * p.y;
  }
  return std::abs(a) / 2.0;
}

}  // namespace detail

// Square root of the convex-hull area of the normalized feature rows.
// Exact 2-D geometry only; higher dimensions are an explicit error rather
// than a silent approximation.
inline double total_coverage(const FeatureMatrix& m) {
  m.validate();
  if (m.column_count() != 2)
    throw std::invalid_argument("total_coverage: only N = 2 feature dimensions are supported");
  std::vector<detail::P2> pts;
  pts.reserve(m.row_count());
  for (const auto& r : m.normalized_rows()) pts.push_back({r[0], r[1]});
  const auto hull = detail::convex_hull(std::move(pts));
  return std::sqrt(detail::polygon_area(hull));
}

namespace detail {

// Equal-width bin over [0,1]; 1.0 belongs to the last bin.
inline size_t bin_index(double z, size_t bins) {
  const auto b = static_cast<size_t>(z * static_cast<double>(bins));
  return std::min(b, bins - 1);
}

inline double entropy_log_base(const std::vector<double>& probs, double base) {
  std::vector<double> terms;
  terms.reserve(probs.size());
  const double log_base = std::log(base);
  for (double p : probs)
    if (p > 0.0) terms.push_back(-p * std::log(p) / log_base);
  return stable_sum(terms);
}

}  // namespace detail

// Entropy of the B-bin histogram of one normalized column, log base B.
// 1 for a uniform histogram, 0 when every value lands in one bin.
inline double uniformity(const std::vector<double>& z, size_t bins) {
  if (z.empty()) throw std::invalid_argument("uniformity: empty column");
  if (bins < 2) throw std::invalid_argument("uniformity: need at least 2 bins");
  std::vector<size_t> counts(bins, 0);
  for (double v : z) {
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument("uniformity: value outside [0,1]");
    ++counts[detail::bin_index(v, bins)];
  }
  std::vector<double> probs(bins);
  for (size_t k = 0; k < bins; ++k)
    probs[k] = static_cast<double>(counts[k]) / static_cast<double>(z.size());
  return std::clamp(detail::entropy_log_base(probs, static_cast<double>(bins)), 0.0, 1.0);
}

// Entropy of the joint B^N-cell histogram of the normalized rows, log base
// B, scaled by 1/N so the N-dimensional uniform distribution scores 1.
inline double total_uniformity(const FeatureMatrix& m, size_t bins,
                               size_t max_cells = size_t(1) << 24) {
  m.validate();
  if (bins < 2) throw std::invalid_argument("total_uniformity: need at least 2 bins");
  const size_t n_dims = m.column_count();
  double cells_d = 1.0;
  for (size_t i = 0; i < n_dims; ++i) cells_d *= static_cast<double>(bins);
  if (cells_d > static_cast<double>(max_cells))
    throw std::runtime_error("total_uniformity: joint histogram cell count exceeds cap");
  const auto cells = static_cast<size_t>(cells_d);

  std::vector<size_t> counts(cells, 0);
  for (const auto& row : m.normalized_rows()) {
    size_t idx = 0;
    for (double v : row) {
      if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument("total_uniformity: value outside [0,1]");
      idx = idx * bins + detail::bin_index(v, bins);
    }
    ++counts[idx];
  }
  std::vector<double> probs;
  probs.reserve(cells);
  for (size_t c : counts)
    probs.push_back(static_cast<double>(c) / static_cast<double>(m.row_count()));
  const double h = detail::entropy_log_base(probs, static_cast<double>(bins));
  return std::clamp(h / static_cast<double>(n_dims), 0.0, 1.0);
}

struct CriteriaReport {
  std::vector<std::string> column_names;
  std::vector<double> coverage_per_column;
  std::vector<double> uniformity_per_column;
  double total_cov = 0.0;
  double total_unif = 0.0;
  size_t bins = 10;
};

inline CriteriaReport report(const FeatureMatrix& m, size_t bins = 10) {
  m.validate();
  CriteriaReport rep;
  rep.bins = bins;
  rep.column_names = m.column_names;
  for (size_t c = 0; c < m.column_count(); ++c) {
    const auto z = m.normalized_column(c);
    rep.coverage_per_column.push_back(coverage(z));
    rep.uniformity_per_column.push_back(uniformity(z, bins));
  }
  rep.total_cov = total_coverage(m);
  rep.total_unif = total_uniformity(m, bins);
  return rep;
}

}  // namespace wcg
