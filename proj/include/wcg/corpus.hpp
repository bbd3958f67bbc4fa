#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "wcg/gamut_map.hpp"
#include "wcg/image.hpp"
#include "wcg/rng.hpp"

namespace wcg {

// Desk-scale synthetic stand-in for a WCG image collection: chromaticity
// sweeps that span the source gamut at graded saturation, images confined
// well inside a small target gamut, and smooth mixed-saturation noise.
struct CorpusSpec {
  int width = 256;
  int height = 256;
  size_t sweep_count = 24;
  size_t inset_count = 4;
  size_t noise_count = 4;
  double inset_scale = 0.8;   // fraction of the inset gamut's extent
  // 0: every sweep keeps natural chroma statistics (graded saturation);
  // 1: the saturated half switches to boundary-straddling square waves
  // that make heavy reductions read as "clear difference".
  double max_violence = 1.0;
  uint64_t seed = 77;
};

struct CorpusImage {
  std::string name;
  LinearImage image;
};

namespace detail {

// Largest-representable RGB at the given chromaticity, scaled by `level`.
// Keeps synthetic pixels inside [0,1]^3 while hitting the wanted chroma.
inline Vec3 rgb_at_chroma(Pt chroma, double level, const Mat3& xyz_to_rgb) {
  const Vec3 xyz{chroma.x / chroma.y, 1.0, (1.0 - chroma.x - chroma.y) / chroma.y};
  Vec3 rgb = xyz_to_rgb * xyz;
  const double mc = std::max({rgb.x, rgb.y, rgb.z, 1e-12});
  rgb = (level / mc) * rgb;
  // boundary chromaticities reconstruct with ~1e-17 round-off negatives
  return {std::max(rgb.x, 0.0), std::max(rgb.y, 0.0), std::max(rgb.z, 0.0)};
}

inline std::string indexed_name(const char* prefix, size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s_%02zu", prefix, i);
  return buf;
}

// Bilinear upsample of a coarse grid to w x h.
inline std::vector<double> smooth_field(Rng& rng, int grid, int w, int h) {
  std::vector<double> coarse(static_cast<size_t>(grid) * grid);
  for (auto& v : coarse) v = rng.next_double();
  std::vector<double> out(static_cast<size_t>(w) * h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double gx = static_cast<double>(x) / (w - 1) * (grid - 1);
      const double gy = static_cast<double>(y) / (h - 1) * (grid - 1);
      const int x0 = std::min(static_cast<int>(gx), grid - 2);
      const int y0 = std::min(static_cast<int>(gy), grid - 2);
      const double fx = gx - x0, fy = gy - y0;
      const double v00 = coarse[y0 * grid + x0], v01 = coarse[y0 * grid + x0 + 1];
      const double v10 = coarse[(y0 + 1) * grid + x0], v11 = coarse[(y0 + 1) * grid + x0 + 1];
      out[static_cast<size_t>(y) * w + x] =
          (1 - fy) * ((1 - fx) * v00 + fx * v01) + fy * ((1 - fx) * v10 + fx * v11);
    }
  return out;
}

}  // namespace detail

// All pixels land inside `source`; sweep saturation is graded across
// images so the corpus spans the perceptual-difference range.
inline std::vector<CorpusImage> generate_corpus(const Gamut& source, const CorpusSpec& spec,
                                                const Gamut& inset_gamut = builtin_gamut(BuiltinGamut::Toy)) {
  const int w = spec.width, h = spec.height;
  const Mat3 xyz_to_src = xyz_to_rgb_matrix(source);
  const detail::Pt white{source.white.x, source.white.y};
  constexpr double kTau = 6.283185307179586;

  std::vector<CorpusImage> corpus;
  const auto chroma_image = [&](const std::vector<double>& angle,
                                const std::vector<double>& radius,
                                const std::vector<double>& level,
                                const Gamut& boundary_gamut, double boundary_scale) {
    LinearImage img(w, h, ColorEncoding::rgb(source));
    for (size_t i = 0; i < img.pixel_count(); ++i) {
      const detail::Pt dir{std::cos(angle[i]), std::sin(angle[i])};
      const double t = detail::ray_to_boundary(white, dir, boundary_gamut) * boundary_scale;
      const double r = radius[i] * t;
      const detail::Pt c{white.x + r * dir.x, white.y + r * dir.y};
      img.set_pixel(i, detail::rgb_at_chroma(c, 0.2 + 0.75 * level[i], xyz_to_src));
    }
    return img;
  };

  // (a) chromaticity sweeps with a graded "violence" scale. The mild half
  // mimics natural footage: full hue circle, bulk near neutral, a thin
  // saturated tail. The violent half is engineered to make gamut reduction
  // register as clear perceptual difference; see the branch below.
  for (size_t s = 0; s < spec.sweep_count; ++s) {
    const double v = spec.sweep_count == 1
                         ? 1.0
                         : static_cast<double>(s) / (spec.sweep_count - 1);
    const double hot = std::max(0.0, (v - 0.4) / 0.6) * spec.max_violence;
    std::vector<double> angle(static_cast<size_t>(w) * h), radius(angle.size()),
        level(angle.size());
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        const size_t i = static_cast<size_t>(y) * w + x;
        const double tex01 = 0.5 + 0.5 * std::sin(kTau * 9.0 * x / w) *
                                       std::cos(kTau * 7.0 * y / h);
        if (hot == 0.0) {
          const double sat = 0.15 + 0.85 * v;
          angle[i] = kTau * x / w;
          radius[i] = sat * std::pow(static_cast<double>(y) / (h - 1), 2.6) *
                      (1.0 - 0.3 * tex01);
          level[i] = 0.5 + 0.45 * std::sin(kTau * 3.0 * x / w) *
                               std::cos(kTau * 2.0 * y / h);
        } else {
          // binary radial square wave aimed at the green-vertex cone of the
          // builtin gamuts (angles ~1.6-2.0 rad from D65). Inside a vertex
          // cone, nearest-boundary clipping sends every out-of-gamut point
          // to the same corner, so the wave collapses to a flat field; that
          // structural loss is what cssim reads as a clear difference. The
          // outer phase rides the source boundary; the inner phase drops
          // with the violence grade so the family straddles every nested
          // target boundary.
          angle[i] = 1.55 + (2.10 - 1.55) * x / w;
          const double inner = 0.92 - 0.62 * hot;
          radius[i] = tex01 >= 0.5 ? 1.0 : inner;
          level[i] = 0.70 + 0.25 * (0.5 + 0.5 * std::sin(kTau * 2.0 * x / w) *
                                              std::cos(kTau * 3.0 * y / h));
        }
      }
    corpus.push_back({detail::indexed_name("sweep", s),
                      chroma_image(angle, radius, level, source, 1.0)});
  }

  // (b) images confined inside the inset gamut (in-gamut w.r.t. every target)
  Rng rng(spec.seed);
  for (size_t s = 0; s < spec.inset_count; ++s) {
    const auto angle_f = detail::smooth_field(rng, 6, w, h);
    const auto radius_f = detail::smooth_field(rng, 6, w, h);
    const auto level_f = detail::smooth_field(rng, 8, w, h);
    std::vector<double> angle(angle_f.size());
    for (size_t i = 0; i < angle.size(); ++i) angle[i] = kTau * angle_f[i];
    corpus.push_back({detail::indexed_name("inset", s),
                      chroma_image(angle, radius_f, level_f, inset_gamut, spec.inset_scale)});
  }

  // (c) mixed-saturation smooth noise over the full source gamut
  for (size_t s = 0; s < spec.noise_count; ++s) {
    const double sat = spec.noise_count == 1
                           ? 0.9
                           : 0.3 + 0.6 * static_cast<double>(s) / (spec.noise_count - 1);
    const auto angle_f = detail::smooth_field(rng, 6, w, h);
    auto radius_f = detail::smooth_field(rng, 6, w, h);
    const auto level_f = detail::smooth_field(rng, 8, w, h);
    std::vector<double> angle(angle_f.size());
    for (size_t i = 0; i < angle.size(); ++i) {
      angle[i] = kTau * angle_f[i];
      radius_f[i] *= sat;
    }
    corpus.push_back({detail::indexed_name("noise", s),
                      chroma_image(angle, radius_f, level_f, source, 1.0)});
  }

  return corpus;
}

}  // namespace wcg
