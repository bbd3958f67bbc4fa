#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "wcg/numeric.hpp"

namespace wcg {

inline constexpr int kSsimWindow = 11;
inline constexpr double kSsimSigma = 1.5;

// Normalized 11-tap Gaussian, sigma 1.5. The 2-D window is its outer
// product, which matches the canonical normalized 11x11 kernel exactly.
inline const std::array<double, kSsimWindow>& gaussian_kernel11() {
  static const std::array<double, kSsimWindow> k = [] {
    std::array<double, kSsimWindow> g{};
    double sum = 0.0;
    for (int i = 0; i < kSsimWindow; ++i) {
      const double d = i - (kSsimWindow - 1) / 2.0;
      g[i] = std::exp(-d * d / (2.0 * kSsimSigma * kSsimSigma));
      sum += g[i];
    }
    for (auto& v : g) v /= sum;
    return g;
  }();
  return k;
}

// Valid-region separable Gaussian filter: (w, h) -> (w-10, h-10).
// No padding; borders are cropped as in the canonical SSIM formulation.
inline std::vector<double> gaussian_filter_valid(const std::vector<double>& plane,
                                                 int w, int h) {
  const auto& k = gaussian_kernel11();
  const int ww = w - kSsimWindow + 1;
  const int hh = h - kSsimWindow + 1;
  std::vector<double> tmp(static_cast<size_t>(ww) * h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < ww; ++x) {
      double s = 0.0;
      for (int i = 0; i < kSsimWindow; ++i)
        s += k[i] * plane[static_cast<size_t>(y) * w + x + i];
      tmp[static_cast<size_t>(y) * ww + x] = s;
    }
  std::vector<double> out(static_cast<size_t>(ww) * hh);
  for (int y = 0; y < hh; ++y)
    for (int x = 0; x < ww; ++x) {
      double s = 0.0;
      for (int i = 0; i < kSsimWindow; ++i)
        s += k[i] * tmp[static_cast<size_t>(y + i) * ww + x];
      out[static_cast<size_t>(y) * ww + x] = s;
    }
  return out;
}

// Windowed first/second moments for a plane pair, on the valid region.
struct WindowStats {
  int width = 0, height = 0;  // valid-region size
  std::vector<double> mu_a, mu_b, var_a, var_b, cov;
};

inline WindowStats window_stats(const std::vector<double>& a,
                                const std::vector<double>& b, int w, int h) {
  if (w < kSsimWindow || h < kSsimWindow)
    throw std::invalid_argument("window_stats: image smaller than the 11x11 window");
  if (a.size() != static_cast<size_t>(w) * h || b.size() != a.size())
    throw std::invalid_argument("window_stats: plane size mismatch");

  const size_t n = a.size();
  std::vector<double> aa(n), bb(n), ab(n);
  for (size_t i = 0; i < n; ++i) {
    aa[i] = a[i] * a[i];
    bb[i] = b[i] * b[i];
    ab[i] = a[i] * b[i];
  }
  WindowStats st;
  st.width = w - kSsimWindow + 1;
  st.height = h - kSsimWindow + 1;
  st.mu_a = gaussian_filter_valid(a, w, h);
  st.mu_b = gaussian_filter_valid(b, w, h);
  st.var_a = gaussian_filter_valid(aa, w, h);
  st.var_b = gaussian_filter_valid(bb, w, h);
  st.cov = gaussian_filter_valid(ab, w, h);
  const size_t m = st.mu_a.size();
  for (size_t i = 0; i < m; ++i) {
    st.var_a[i] -= st.mu_a[i] * st.mu_a[i];
    st.var_b[i] -= st.mu_b[i] * st.mu_b[i];
    st.cov[i] -= st.mu_a[i] * st.mu_b[i];
  }
  return st;
}

// Mean SSIM over the valid region. `dynamic_range` sets the stabilizers
// C1 = (0.01 L)^2 and C2 = (0.03 L)^2.
inline double ssim_channel(const std::vector<double>& a, const std::vector<double>& b,
                           int w, int h, double dynamic_range) {
  const WindowStats st = window_stats(a, b, w, h);
  const double c1 = 0.01 * dynamic_range * 0.01 * dynamic_range;
  const double c2 = 0.03 * dynamic_range * 0.03 * dynamic_range;
  const size_t m = st.mu_a.size();
  std::vector<double> map(m);
  for (size_t i = 0; i < m; ++i) {
    const double num = (2.0 * st.mu_a[i] * st.mu_b[i] + c1) * (2.0 * st.cov[i] + c2);
    const double den = (st.mu_a[i] * st.mu_a[i] + st.mu_b[i] * st.mu_b[i] + c1) *
                       (st.var_a[i] + st.var_b[i] + c2);
    map[i] = num / den;
  }
  return mean(map);
}

}  // namespace wcg
