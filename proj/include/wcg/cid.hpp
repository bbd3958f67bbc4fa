#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "wcg/gamut_map.hpp"
#include "wcg/lab.hpp"
#include "wcg/numeric.hpp"
#include "wcg/parallel.hpp"
#include "wcg/selection.hpp"
#include "wcg/ssim.hpp"
#include "wcg/stats.hpp"

namespace wcg {

// Stabilizers for the five comparison factors, (K * dynamic range)^2 with
// ranges L*: 100, C*: 180, hue residual: 360. The contrast/structure pair
// keeps SSIM's K = 0.03. The difference factors need much wider constants:
// gamut reduction shifts chroma by tens of C*ab units, and narrow
// stabilizers drive the factor product to zero for every target, flattening
// the graded response the benchmark relies on.
struct CidConfig {
  double c_lightness_diff = 225.0;      // (0.15 * 100)^2
  double c_lightness_contrast = 9.0;    // (0.03 * 100)^2
  double c_lightness_structure = 4.5;   // contrast constant / 2
  double c_chroma_diff = 729.0;         // (0.15 * 180)^2
  double c_hue_diff = 11664.0;          // (0.30 * 360)^2
  static constexpr const char* kVariant = "cid-cielab-5factor-v1";
};

// Color-image-difference score in [0,1]; 0 for identical images. Five
// windowed factors on CIELAB: lightness difference / contrast / structure,
// chroma difference on C*ab, and hue difference on the Da/Db residual.
inline double cid(const LinearImage& ref, const LinearImage& test,
                  const CidConfig& cfg = {}) {
  require_same_shape(ref, test);
  const auto& ea = ref.encoding();
  const auto& eb = test.encoding();
  const bool same_tag =
      ea.kind == eb.kind &&
      (ea.kind != EncodingKind::RgbLinear || ea.gamut->name == eb.gamut->name);
  if (!same_tag) throw std::invalid_argument("cid: encoding mismatch");

  const LabPlanes a = to_lab(ref);
  const LabPlanes b = to_lab(test);
  const int w = ref.width(), h = ref.height();
  const size_t n = ref.pixel_count();

  const WindowStats lt = window_stats(a.L, b.L, w, h);

  // chroma planes
  std::vector<double> ca(n), cb(n), dh2(n);
  for (size_t i = 0; i < n; ++i) {
    ca[i] = std::hypot(a.a[i], a.b[i]);
    cb[i] = std::hypot(b.a[i], b.b[i]);
    const double da = a.a[i] - b.a[i];
    const double db = a.b[i] - b.b[i];
    const double dc = ca[i] - cb[i];
    dh2[i] = std::max(0.0, da * da + db * db - dc * dc);
  }
  const std::vector<double> mu_ca = gaussian_filter_valid(ca, w, h);
  const std::vector<double> mu_cb = gaussian_filter_valid(cb, w, h);
  const std::vector<double> mu_dh2 = gaussian_filter_valid(dh2, w, h);

  const size_t m = lt.mu_a.size();
  std::vector<double> product(m);
  for (size_t i = 0; i < m; ++i) {
    const double dl = lt.mu_a[i] - lt.mu_b[i];
    const double f_light = 1.0 / (1.0 + dl * dl / cfg.c_lightness_diff);

    const double sa = std::sqrt(std::max(0.0, lt.var_a[i]));
    const double sb = std::sqrt(std::max(0.0, lt.var_b[i]));
    const double f_contrast = (2.0 * sa * sb + cfg.c_lightness_contrast) /
                              (sa * sa + sb * sb + cfg.c_lightness_contrast);
    const double f_structure = std::max(
        0.0, (lt.cov[i] + cfg.c_lightness_structure) /
                 (sa * sb + cfg.c_lightness_structure));

    const double dc = mu_ca[i] - mu_cb[i];
    const double f_chroma = 1.0 / (1.0 + dc * dc / cfg.c_chroma_diff);
    const double f_hue = 1.0 / (1.0 + mu_dh2[i] / cfg.c_hue_diff);

    product[i] = std::clamp(f_light * f_contrast * f_structure * f_chroma * f_hue,
                            0.0, 1.0);
  }
  return std::clamp(1.0 - mean(product), 0.0, 1.0);
}

// CID gain between two mappers sharing a target: positive means mapper_b
// leaves the image closer to the original than mapper_a does. Exactly
// antisymmetric in the mapper pair.
inline double cid_gain(const LinearImage& original, const GamutMapper& mapper_a,
                       const GamutMapper& mapper_b, const CidConfig& cfg = {}) {
  if (mapper_a.target.name != mapper_b.target.name)
    throw std::invalid_argument("cid_gain: mappers must share the target gamut");
  if (original.encoding().kind != EncodingKind::RgbLinear)
    throw std::invalid_argument("cid_gain: original must be linear RGB");
  const Gamut& ref_gamut = *original.encoding().gamut;
  const LinearImage mapped_a =
      convert_gamut(apply(mapper_a, original), mapper_a.target, ref_gamut);
  const LinearImage mapped_b =
      convert_gamut(apply(mapper_b, original), mapper_b.target, ref_gamut);
  return cid(original, mapped_a, cfg) - cid(original, mapped_b, cfg);
}

struct CidGainRecord {
  size_t image_index = 0;
  std::string image_id;
  std::string target_name;
  double gain = 0.0;
};

// Per-image, per-target gains for a fixed mapper pair; rows follow the
// pool order, columns the target order.
struct GainTable {
  std::vector<std::string> image_ids;
  std::vector<std::string> target_names;
  std::vector<std::vector<double>> gains;  // image x target

  std::vector<CidGainRecord> records() const {
    std::vector<CidGainRecord> out;
    for (size_t i = 0; i < gains.size(); ++i)
      for (size_t t = 0; t < target_names.size(); ++t)
        out.push_back({i, image_ids[i], target_names[t], gains[i][t]});
    return out;
  }
};

inline GainTable compute_gain_table(const std::vector<LinearImage>& pool,
                                    const std::vector<std::string>& ids,
                                    const Gamut& ref, const std::vector<Gamut>& targets,
                                    MapperKind kind_a, MapperKind kind_b,
                                    const CidConfig& cfg = {}) {
  if (pool.size() != ids.size())
    throw std::invalid_argument("compute_gain_table: id count mismatch");
  GainTable table;
  table.image_ids = ids;
  for (const Gamut& t : targets) table.target_names.push_back(t.name);
  table.gains.assign(pool.size(), std::vector<double>(targets.size(), 0.0));
  parallel_for(pool.size(), [&](size_t i) {
    for (size_t t = 0; t < targets.size(); ++t) {
      GamutMapper a(kind_a, ref, targets[t]);
      GamutMapper b(kind_b, ref, targets[t]);
      table.gains[i][t] = cid_gain(pool[i], a, b, cfg);
    }
  });
  return table;
}

struct MethodTrialStats {
  std::string method;
  // [target][trial]
  std::vector<std::vector<double>> trial_means;
  std::vector<std::vector<double>> trial_stds;
};

struct ComparisonTests {
  std::string target_name;
  TestResult f_on_means;   // H1: framework means vary less
  TestResult f_on_stds;    // H1: framework stds vary less
  TestResult t_on_means;   // H1: framework means larger
  TestResult t_on_stds;    // H1: framework stds larger
};

struct BenchmarkReport {
  GainTable table;
  std::vector<MethodTrialStats> methods;  // [0] framework, [1] baseline
  std::vector<ComparisonTests> tests;     // one per target
  size_t trials = 0;
  uint64_t seed = 0;
  double bonferroni_alpha = 0.05;
  size_t comparison_count = 0;  // m for the corrected threshold
};

// Trial loop of the GMA benchmarking scenario: per trial, each selection
// method picks its images and the per-target mean / standard deviation of
// their gains is recorded; the two populations then go through one-sided
// F and Welch tests per target.
inline BenchmarkReport benchmark(const GainTable& table,
                                 const std::vector<std::vector<double>>& framework_features,
                                 const std::vector<std::vector<double>>& baseline_features,
                                 SelectionFeature baseline_kind, SelectionConfig cfg,
                                 size_t trials) {
  if (table.gains.empty()) throw std::invalid_argument("benchmark: empty pool");
  if (framework_features.size() != table.gains.size())
    throw std::invalid_argument("benchmark: feature count mismatch");
  if (baseline_kind != SelectionFeature::Random &&
      baseline_features.size() != table.gains.size())
    throw std::invalid_argument("benchmark: baseline feature count mismatch");

  BenchmarkReport rep;
  rep.table = table;
  rep.trials = trials;
  rep.seed = cfg.seed;
  const size_t n_targets = table.target_names.size();

  MethodTrialStats framework{"framework", {}, {}};
  MethodTrialStats baseline{selection_feature_name(baseline_kind), {}, {}};
  framework.trial_means.resize(n_targets);
  framework.trial_stds.resize(n_targets);
  baseline.trial_means.resize(n_targets);
  baseline.trial_stds.resize(n_targets);

  const auto run_method = [&](SelectionFeature feature,
                              const std::vector<std::vector<double>>& feats,
                              MethodTrialStats& out, uint64_t stream_base) {
    for (size_t t = 0; t < trials; ++t) {
      SelectionConfig c = cfg;
      c.feature = feature;
      c.seed = derive_seed(cfg.seed, stream_base + t);
      const auto picked = select_representative(feats, c).flattened();
      for (size_t g = 0; g < n_targets; ++g) {
        std::vector<double> gains;
        gains.reserve(picked.size());
        for (size_t i : picked) gains.push_back(table.gains[i][g]);
        out.trial_means[g].push_back(mean(gains));
        out.trial_stds[g].push_back(std::sqrt(sample_variance(gains)));
      }
    }
  };

  run_method(SelectionFeature::Framework, framework_features, framework, 0);
  // the random baseline ignores feature values; it only needs the pool size
  run_method(baseline_kind,
             baseline_kind == SelectionFeature::Random ? framework_features
                                                       : baseline_features,
             baseline, trials);

  for (size_t g = 0; g < n_targets; ++g) {
    ComparisonTests ct;
    ct.target_name = table.target_names[g];
    ct.f_on_means = f_test(framework.trial_means[g], baseline.trial_means[g], TestSide::Less);
    ct.f_on_stds = f_test(framework.trial_stds[g], baseline.trial_stds[g], TestSide::Less);
    ct.t_on_means = welch_t(framework.trial_means[g], baseline.trial_means[g], TestSide::Greater);
    ct.t_on_stds = welch_t(framework.trial_stds[g], baseline.trial_stds[g], TestSide::Greater);
    rep.tests.push_back(std::move(ct));
  }
  rep.comparison_count = 4 * n_targets;
  rep.methods = {std::move(framework), std::move(baseline)};
  return rep;
}

}  // namespace wcg
