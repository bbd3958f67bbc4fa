#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wcg/color.hpp"

namespace wcg {

enum class EncodingKind { RgbLinear, Xyz };

// Tag describing what the three planes of a LinearImage hold. RgbLinear
// carries the gamut whose primaries the values are expressed in.
struct ColorEncoding {
  EncodingKind kind = EncodingKind::RgbLinear;
  std::optional<Gamut> gamut;  // present iff kind == RgbLinear

  static ColorEncoding rgb(Gamut g) { return {EncodingKind::RgbLinear, std::move(g)}; }
  static ColorEncoding xyz() { return {EncodingKind::Xyz, std::nullopt}; }

  bool matches_gamut(const Gamut& g) const {
    return kind == EncodingKind::RgbLinear && gamut && gamut->name == g.name;
  }
};

// Planar floating-point tristimulus image. Values are linear light,
// nominally [0,1] but deliberately not clamped: out-of-gamut colors stay
// representable as negative or >1 components.
class LinearImage {
 public:
  LinearImage(int width, int height, ColorEncoding enc)
      : width_(width), height_(height), encoding_(std::move(enc)) {
    if (width <= 0 || height <= 0)
      throw std::invalid_argument("LinearImage: non-positive dimensions");
    for (auto& p : planes_) p.assign(static_cast<size_t>(width) * height, 0.0);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  size_t pixel_count() const { return static_cast<size_t>(width_) * height_; }
  const ColorEncoding& encoding() const { return encoding_; }
  void set_encoding(ColorEncoding enc) { encoding_ = std::move(enc); }

  double at(int channel, size_t i) const { return planes_[channel][i]; }
  double& at(int channel, size_t i) { return planes_[channel][i]; }

  Vec3 pixel(size_t i) const { return {planes_[0][i], planes_[1][i], planes_[2][i]}; }
  void set_pixel(size_t i, Vec3 v) {
    planes_[0][i] = v.x;
    planes_[1][i] = v.y;
    planes_[2][i] = v.z;
  }

  const std::vector<double>& plane(int channel) const { return planes_[channel]; }
  std::vector<double>& plane(int channel) { return planes_[channel]; }

  void require_finite() const {
    for (const auto& p : planes_)
      for (double v : p)
        if (!std::isfinite(v))
          throw std::runtime_error("LinearImage: non-finite sample");
  }

 private:
  int width_;
  int height_;
  ColorEncoding encoding_;
  std::vector<double> planes_[3];
};

inline void require_same_shape(const LinearImage& a, const LinearImage& b) {
  if (a.width() != b.width() || a.height() != b.height())
    throw std::invalid_argument("image dimension mismatch");
}

inline void require_rgb_in(const LinearImage& img, const Gamut& g) {
  if (!img.encoding().matches_gamut(g))
    throw std::invalid_argument("image encoding mismatch: expected linear RGB in " + g.name);
}

// Re-expresses primaries via XYZ. Purely linear: out-of-gamut colors come
// out negative or >1, never clipped.
inline LinearImage convert_gamut(const LinearImage& img, const Gamut& src,
                                 const Gamut& dst) {
  require_rgb_in(img, src);
  const Mat3 m = xyz_to_rgb_matrix(dst) * rgb_to_xyz_matrix(src);
  LinearImage out(img.width(), img.height(), ColorEncoding::rgb(dst));
  const size_t n = img.pixel_count();
  for (size_t i = 0; i < n; ++i) out.set_pixel(i, m * img.pixel(i));
  return out;
}

// Image re-expressed as XYZ planes.
inline LinearImage to_xyz(const LinearImage& img) {
  if (img.encoding().kind == EncodingKind::Xyz) return img;
  const Mat3 m = rgb_to_xyz_matrix(*img.encoding().gamut);
  LinearImage out(img.width(), img.height(), ColorEncoding::xyz());
  const size_t n = img.pixel_count();
  for (size_t i = 0; i < n; ++i) out.set_pixel(i, m * img.pixel(i));
  return out;
}

// Chromaticity of a single linear RGB triple expressed in g.
inline Chromaticity pixel_chromaticity(Vec3 rgb, const Gamut& g) {
  const Vec3 xyz = rgb_to_xyz_matrix(g) * rgb;
  const double sum = xyz.x + xyz.y + xyz.z;
  if (!(sum > 0.0))
    throw std::domain_error("pixel_chromaticity: zero tristimulus sum");
  return Chromaticity(xyz.x / sum, xyz.y / sum);
}

// Fraction of pixels whose chromaticity falls outside `ref`. Black pixels
// (zero tristimulus sum) count as inside.
inline double out_of_gamut_fraction(const LinearImage& img, const Gamut& src,
                                    const Gamut& ref, double eps = 1e-9) {
  require_rgb_in(img, src);
  const Mat3 m = rgb_to_xyz_matrix(src);
  const size_t n = img.pixel_count();
  size_t outside = 0;
  for (size_t i = 0; i < n; ++i) {
    const Vec3 xyz = m * img.pixel(i);
    const double sum = xyz.x + xyz.y + xyz.z;
    if (!(sum > 0.0)) continue;  // black: trivially in-gamut
    if (!point_in_gamut(xyz.x / sum, xyz.y / sum, ref, eps)) ++outside;
  }
  return static_cast<double>(outside) / static_cast<double>(n);
}

}  // namespace wcg
