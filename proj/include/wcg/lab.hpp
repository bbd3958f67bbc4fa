#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "wcg/image.hpp"

namespace wcg {

// CIE 1976 L*a*b* under D65, Yn = 1.
struct LabPlanes {
  int width = 0, height = 0;
  std::vector<double> L, a, b;
};

namespace detail {

inline double lab_f(double t) {
  constexpr double delta = 6.0 / 29.0;
  constexpr double delta3 = delta * delta * delta;
  return t > delta3 ? std::cbrt(t) : t / (3.0 * delta * delta) + 4.0 / 29.0;
}

}  // namespace detail

inline LabPlanes to_lab(const LinearImage& img) {
  const Chromaticity d65(kD65x, kD65y);
  const Vec3 wn = (1.0 / d65.y) * d65.xyz();  // Xn, 1, Zn

  LinearImage xyz_img = to_xyz(img);
  LabPlanes lab;
  lab.width = img.width();
  lab.height = img.height();
  const size_t n = img.pixel_count();
  lab.L.resize(n);
  lab.a.resize(n);
  lab.b.resize(n);
  for (size_t i = 0; i < n; ++i) {
    const Vec3 xyz = xyz_img.pixel(i);
    const double fx = detail::lab_f(xyz.x / wn.x);
    const double fy = detail::lab_f(xyz.y / wn.y);
    const double fz = detail::lab_f(xyz.z / wn.z);
    lab.L[i] = 116.0 * fy - 16.0;
    lab.a[i] = 500.0 * (fx - fy);
    lab.b[i] = 200.0 * (fy - fz);
  }
  return lab;
}

}  // namespace wcg
