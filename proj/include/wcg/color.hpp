#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wcg {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }

// Row-major 3x3 matrix; just enough linear algebra for colorimetry.
struct Mat3 {
  std::array<double, 9> m{};

  static Mat3 identity() { return {{1, 0, 0, 0, 1, 0, 0, 0, 1}}; }

  static Mat3 from_columns(Vec3 c0, Vec3 c1, Vec3 c2) {
    return {{c0.x, c1.x, c2.x, c0.y, c1.y, c2.y, c0.z, c1.z, c2.z}};
  }

  double operator()(int r, int c) const { return m[3 * r + c]; }
  double& operator()(int r, int c) { return m[3 * r + c]; }

  Vec3 operator*(Vec3 v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
            m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
  }

  Mat3 operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
        r(i, j) = s;
      }
    return r;
  }

  double determinant() const {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) -
           m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
  }

  Mat3 inverse() const {
    const double det = determinant();
    if (std::abs(det) < 1e-15)
      throw std::runtime_error("Mat3: singular matrix");
    const double s = 1.0 / det;
    Mat3 r;
    r.m = {s * (m[4] * m[8] - m[5] * m[7]), s * (m[2] * m[7] - m[1] * m[8]),
           s * (m[1] * m[5] - m[2] * m[4]), s * (m[5] * m[6] - m[3] * m[8]),
           s * (m[0] * m[8] - m[2] * m[6]), s * (m[2] * m[3] - m[0] * m[5]),
           s * (m[3] * m[7] - m[4] * m[6]), s * (m[1] * m[6] - m[0] * m[7]),
           s * (m[0] * m[4] - m[1] * m[3])};
    return r;
  }
};

// CIE 1931 xy chromaticity coordinates.
struct Chromaticity {
  double x = 0.0;
  double y = 0.0;

  Chromaticity() = default;
  Chromaticity(double x_, double y_) : x(x_), y(y_) {
    if (!(x >= 0.0) || !(y > 0.0) || !(x + y <= 1.0 + 1e-12))
      throw std::invalid_argument("Chromaticity: coordinates outside CIE xy domain");
  }

  // z = 1 - x - y completes the normalized xyz triple.
  Vec3 xyz() const { return {x, y, 1.0 - x - y}; }
};

inline constexpr double kD65x = 0.3127;
inline constexpr double kD65y = 0.3290;

// Signed double area of the (a, b, c) triangle; positive when CCW.
inline double signed_area2(double ax, double ay, double bx, double by,
                           double cx, double cy) {
  return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
}

// A named RGB primary triangle plus white point in CIE xy.
struct Gamut {
  std::string name;
  Chromaticity red, green, blue, white;

  Gamut(std::string name_, Chromaticity r, Chromaticity g, Chromaticity b,
        Chromaticity w)
      : name(std::move(name_)), red(r), green(g), blue(b), white(w) {
    if (std::abs(triangle_area()) < 1e-12)
      throw std::invalid_argument("Gamut: collinear primaries");
    if (!contains_strict(w))
      throw std::invalid_argument("Gamut: white point not inside the primary triangle");
  }

  double triangle_area() const {
    return 0.5 * std::abs(signed_area2(red.x, red.y, green.x, green.y,
                                       blue.x, blue.y));
  }

 private:
  bool contains_strict(Chromaticity c) const {
    const double s = signed_area2(red.x, red.y, green.x, green.y, blue.x, blue.y);
    const double a = signed_area2(red.x, red.y, green.x, green.y, c.x, c.y) / s;
    const double b = signed_area2(green.x, green.y, blue.x, blue.y, c.x, c.y) / s;
    const double g = signed_area2(blue.x, blue.y, red.x, red.y, c.x, c.y) / s;
    return a > 0.0 && b > 0.0 && g > 0.0;
  }
};

enum class BuiltinGamut { P3, Rec709, Rec2020, Toy };

inline Gamut builtin_gamut(BuiltinGamut g) {
  const Chromaticity d65(kD65x, kD65y);
  switch (g) {
    case BuiltinGamut::P3:
      return Gamut("P3", {0.680, 0.320}, {0.265, 0.690}, {0.150, 0.060}, d65);
    case BuiltinGamut::Rec709:
      return Gamut("Rec709", {0.640, 0.330}, {0.300, 0.600}, {0.150, 0.060}, d65);
    case BuiltinGamut::Rec2020:
      return Gamut("Rec2020", {0.708, 0.292}, {0.170, 0.797}, {0.131, 0.046}, d65);
    case BuiltinGamut::Toy:
      return Gamut("Toy", {0.570, 0.320}, {0.300, 0.530}, {0.190, 0.130}, d65);
  }
  throw std::invalid_argument("builtin_gamut: unknown gamut");
}

// Linear RGB (white-normalized so (1,1,1) maps to the white point with
// Y = 1) to CIE XYZ. Columns are the primaries' XYZ contributions.
inline Mat3 rgb_to_xyz_matrix(const Gamut& g) {
  const Mat3 primaries = Mat3::from_columns(g.red.xyz(), g.green.xyz(), g.blue.xyz());
  const Vec3 white_xyz = (1.0 / g.white.y) * g.white.xyz();  // Y = 1
  Vec3 scale;
  try {
    scale = primaries.inverse() * white_xyz;
  } catch (const std::runtime_error&) {
    throw std::runtime_error("rgb_to_xyz_matrix: degenerate primary configuration");
  }
  return primaries * Mat3{{scale.x, 0, 0, 0, scale.y, 0, 0, 0, scale.z}};
}

inline Mat3 xyz_to_rgb_matrix(const Gamut& g) {
  return rgb_to_xyz_matrix(g).inverse();
}

// Point-in-triangle test with barycentric slack eps. Raw-coordinate
// variant so pipelines can test nonphysical intermediate values without
// constructing a validated Chromaticity.
inline bool point_in_gamut(double px, double py, const Gamut& g, double eps = 1e-9) {
  const double s = signed_area2(g.red.x, g.red.y, g.green.x, g.green.y,
                                g.blue.x, g.blue.y);
  const double a = signed_area2(g.red.x, g.red.y, g.green.x, g.green.y, px, py) / s;
  const double b = signed_area2(g.green.x, g.green.y, g.blue.x, g.blue.y, px, py) / s;
  const double c = signed_area2(g.blue.x, g.blue.y, g.red.x, g.red.y, px, py) / s;
  return a >= -eps && b >= -eps && c >= -eps;
}

inline bool in_gamut(Chromaticity c, const Gamut& g, double eps = 1e-9) {
  return point_in_gamut(c.x, c.y, g, eps);
}

// True when every vertex of `inner` lies in `outer` and the triangle is
// strictly smaller. Shared vertices are allowed (Rec709 and P3 share blue).
inline bool gamut_contains(const Gamut& outer, const Gamut& inner, double eps = 1e-9) {
  return in_gamut(inner.red, outer, eps) && in_gamut(inner.green, outer, eps) &&
         in_gamut(inner.blue, outer, eps) &&
         inner.triangle_area() < outer.triangle_area();
}

}  // namespace wcg
