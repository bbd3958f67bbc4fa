#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "wcg/gamut_map.hpp"
#include "wcg/lab.hpp"
#include "wcg/ssim.hpp"

namespace wcg {

// Logistic map from a cssim score to a predicted mean opinion score of
// perceptual difference (0 none .. 2 clear).
struct SigmoidParams {
  double alpha = 2.0;
  double beta = -3.5;
  double gamma = 1.9;

  void validate() const {
    if (!(alpha > 0.0)) throw std::invalid_argument("SigmoidParams: alpha must be positive");
    if (beta == 0.0) throw std::invalid_argument("SigmoidParams: beta must be nonzero");
  }
};

inline double predict_mos(double cssim_value, const SigmoidParams& p = {}) {
  p.validate();
  if (!std::isfinite(cssim_value))
    throw std::invalid_argument("predict_mos: non-finite input");
  return p.alpha / (1.0 + std::pow(10.0, p.beta * (p.gamma - cssim_value)));
}

// Color-extended SSIM: sum of per-channel SSIM over CIELAB L*, a*, b*
// with dynamic ranges 100 / 255 / 255. Identity pairs score 3.
inline double cssim(const LinearImage& a, const LinearImage& b) {
  require_same_shape(a, b);
  const auto& ea = a.encoding();
  const auto& eb = b.encoding();
  const bool same_tag =
      ea.kind == eb.kind &&
      (ea.kind != EncodingKind::RgbLinear || ea.gamut->name == eb.gamut->name);
  if (!same_tag) throw std::invalid_argument("cssim: encoding mismatch");

  const LabPlanes la = to_lab(a);
  const LabPlanes lb = to_lab(b);
  const int w = a.width(), h = a.height();
  return ssim_channel(la.L, lb.L, w, h, 100.0) +
         ssim_channel(la.a, lb.a, w, h, 255.0) +
         ssim_channel(la.b, lb.b, w, h, 255.0);
}

// Per-image vector of predicted perceptual differences, one entry per
// target gamut in reduction order.
struct FeatureVector {
  std::vector<double> values;        // predicted MOS, in [0, alpha]
  std::vector<double> cssim_values;  // raw cssim scores alongside
  std::vector<std::string> target_names;
};

// Successive gamut reduction: each target is mapped from the previous
// stage's image, while every score compares against the original. Both
// images are re-expressed in the reference gamut before cssim so only
// color content drives the score.
inline FeatureVector characterize(const LinearImage& original, const Gamut& ref,
                                  const std::vector<Gamut>& targets,
                                  MapperKind mapper_kind,
                                  const SigmoidParams& params = {}) {
  if (targets.empty()) throw std::invalid_argument("characterize: no target gamuts");
  require_rgb_in(original, ref);
  const Gamut* prev = &ref;
  for (const Gamut& t : targets) {
    if (!gamut_contains(*prev, t))
      throw std::invalid_argument("characterize: target gamuts must be strictly nested (" +
                                  t.name + " not contained in " + prev->name + ")");
    prev = &t;
  }

  FeatureVector fv;
  LinearImage current = original;
  const Gamut* current_gamut = &ref;
  for (const Gamut& target : targets) {
    GamutMapper mapper(mapper_kind, *current_gamut, target);
    current = apply(mapper, current);
    current_gamut = &target;

    const LinearImage in_ref = convert_gamut(current, target, ref);
    const double score = cssim(in_ref, original);
    fv.cssim_values.push_back(score);
    fv.values.push_back(predict_mos(score, params));
    fv.target_names.push_back(target.name);
  }
  return fv;
}

}  // namespace wcg
