#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "wcg/image.hpp"

namespace wcg {

namespace detail {

struct Pt {
  double x, y;
};

inline std::array<std::array<Pt, 2>, 3> triangle_edges(const Gamut& g) {
  const Pt r{g.red.x, g.red.y}, gr{g.green.x, g.green.y}, b{g.blue.x, g.blue.y};
  return {{{r, gr}, {gr, b}, {b, r}}};
}

// Euclidean-nearest point on the triangle boundary.
inline Pt nearest_on_boundary(Pt p, const Gamut& g) {
  Pt best{0, 0};
  double best_d2 = std::numeric_limits<double>::infinity();
  for (const auto& e : triangle_edges(g)) {
    const double ex = e[1].x - e[0].x, ey = e[1].y - e[0].y;
    const double len2 = ex * ex + ey * ey;
    double t = ((p.x - e[0].x) * ex + (p.y - e[0].y) * ey) / len2;
    t = std::clamp(t, 0.0, 1.0);
    const Pt q{e[0].x + t * ex, e[0].y + t * ey};
    const double d2 = (p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = q;
    }
  }
  return best;
}

// Smallest positive t with origin + t*dir on the triangle boundary.
inline double ray_to_boundary(Pt origin, Pt dir, const Gamut& g) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : triangle_edges(g)) {
    const double ex = e[1].x - e[0].x, ey = e[1].y - e[0].y;
    const double det = ex * dir.y - ey * dir.x;
    if (std::abs(det) < 1e-15) continue;  // parallel
    const double ax = e[0].x - origin.x, ay = e[0].y - origin.y;
    const double t = (ex * ay - ey * ax) / det;
    const double u = (dir.x * ay - dir.y * ax) / det;
    if (t > 1e-12 && u >= -1e-12 && u <= 1.0 + 1e-12) best = std::min(best, t);
  }
  if (!std::isfinite(best))
    throw std::runtime_error("gamut compression: ray misses target boundary (white point outside target?)");
  return best;
}

// Reconstructs XYZ from chromaticity at unchanged luminance and re-expresses
// in dst primaries. Tiny negatives are conversion round-off; anything larger
// means the geometry went wrong.
inline Vec3 reconstruct_rgb(Pt chroma, double Y, const Mat3& xyz_to_dst,
                            double clamp_eps = 1e-9) {
  const Vec3 xyz{chroma.x * Y / chroma.y, Y, (1.0 - chroma.x - chroma.y) * Y / chroma.y};
  Vec3 rgb = xyz_to_dst * xyz;
  for (double* v : {&rgb.x, &rgb.y, &rgb.z}) {
    if (*v < 0.0) {
      if (*v > -clamp_eps)
        *v = 0.0;
      else
        throw std::runtime_error("gamut mapping produced a strongly negative component (geometry bug)");
    }
  }
  return rgb;
}

}  // namespace detail

// Projects out-of-gamut chromaticities onto the nearest point of the target
// triangle in the CIE xy plane, holding luminance Y fixed. In-gamut pixels
// pass through as a plain primary re-expression.
inline LinearImage clip_to_gamut(const LinearImage& img, const Gamut& src,
                                 const Gamut& target, double eps = 1e-9) {
  require_rgb_in(img, src);
  const Mat3 to_xyz = rgb_to_xyz_matrix(src);
  const Mat3 conv = xyz_to_rgb_matrix(target) * to_xyz;
  const Mat3 xyz_to_dst = xyz_to_rgb_matrix(target);
  LinearImage out(img.width(), img.height(), ColorEncoding::rgb(target));
  const size_t n = img.pixel_count();
  for (size_t i = 0; i < n; ++i) {
    const Vec3 rgb = img.pixel(i);
    const Vec3 xyz = to_xyz * rgb;
    const double sum = xyz.x + xyz.y + xyz.z;
    if (!(sum > 0.0) || !(xyz.y > 0.0)) {  // black passes through
      out.set_pixel(i, conv * rgb);
      continue;
    }
    const detail::Pt c{xyz.x / sum, xyz.y / sum};
    if (point_in_gamut(c.x, c.y, target, eps)) {
      out.set_pixel(i, conv * rgb);
    } else {
      const detail::Pt q = detail::nearest_on_boundary(c, target);
      out.set_pixel(i, detail::reconstruct_rgb(q, xyz.y, xyz_to_dst));
    }
  }
  return out;
}

// Global compression scale: the largest uniform shrink toward the white
// point that brings every src primary inside the target.
inline double compression_scale(const Gamut& src, const Gamut& target) {
  if (std::abs(src.white.x - target.white.x) > 1e-9 ||
      std::abs(src.white.y - target.white.y) > 1e-9)
    throw std::invalid_argument("gamut compression: source and target white points differ");
  if (!point_in_gamut(target.white.x, target.white.y, target, 0.0))
    throw std::invalid_argument("gamut compression: white point outside target");
  const detail::Pt w{src.white.x, src.white.y};
  double s = 1.0;
  for (const Chromaticity& p : {src.red, src.green, src.blue}) {
    const detail::Pt dir{p.x - w.x, p.y - w.y};
    s = std::min(s, detail::ray_to_boundary(w, dir, target));
  }
  return s;
}

// Uniform linear compression about the white point: every chromaticity
// moves to w + s*(c - w) with one global s, luminance unchanged. The image
// of the whole src triangle lands inside the target.
inline LinearImage compress_to_gamut(const LinearImage& img, const Gamut& src,
                                     const Gamut& target) {
  require_rgb_in(img, src);
  const double s = compression_scale(src, target);
  const Mat3 to_xyz = rgb_to_xyz_matrix(src);
  const Mat3 conv = xyz_to_rgb_matrix(target) * to_xyz;
  const Mat3 xyz_to_dst = xyz_to_rgb_matrix(target);
  const detail::Pt w{src.white.x, src.white.y};
  LinearImage out(img.width(), img.height(), ColorEncoding::rgb(target));
  const size_t n = img.pixel_count();
  for (size_t i = 0; i < n; ++i) {
    const Vec3 rgb = img.pixel(i);
    const Vec3 xyz = to_xyz * rgb;
    const double sum = xyz.x + xyz.y + xyz.z;
    if (!(sum > 0.0) || !(xyz.y > 0.0)) {
      out.set_pixel(i, conv * rgb);
      continue;
    }
    const detail::Pt c{xyz.x / sum, xyz.y / sum};
    const detail::Pt q{w.x + s * (c.x - w.x), w.y + s * (c.y - w.y)};
    out.set_pixel(i, detail::reconstruct_rgb(q, xyz.y, xyz_to_dst));
  }
  return out;
}

enum class MapperKind { Clip, Compress };

inline MapperKind parse_mapper_kind(const std::string& s) {
  if (s == "clip") return MapperKind::Clip;
  if (s == "compress") return MapperKind::Compress;
  throw std::invalid_argument("unknown gamut mapping operator '" + s + "'");
}

inline const char* mapper_kind_name(MapperKind k) {
  return k == MapperKind::Clip ? "clip" : "compress";
}

// A configured gamut mapping operator. For compression the global scale is
// precomputed at construction.
struct GamutMapper {
  MapperKind kind;
  Gamut source;
  Gamut target;
  double scale = 1.0;  // compression only

  GamutMapper(MapperKind k, Gamut src, Gamut tgt)
      : kind(k), source(std::move(src)), target(std::move(tgt)) {
    if (kind == MapperKind::Compress) scale = compression_scale(source, target);
  }
};

inline LinearImage apply(const GamutMapper& mapper, const LinearImage& img) {
  if (mapper.kind == MapperKind::Clip)
    return clip_to_gamut(img, mapper.source, mapper.target);
  return compress_to_gamut(img, mapper.source, mapper.target);
}

}  // namespace wcg
