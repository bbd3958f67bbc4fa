#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "wcg/image.hpp"
#include "wcg/numeric.hpp"
#include "wcg/rng.hpp"
#include "wcg/stats.hpp"
#include "wcg/transfer.hpp"

namespace wcg {

struct KmeansResult {
  std::vector<size_t> assignments;            // point -> cluster
  std::vector<std::vector<double>> centroids; // k x dims
  double distortion = 0.0;                    // sum of squared distances
  int iterations = 0;
  std::vector<double> distortion_trace;       // per assignment step
};

namespace detail {

inline double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace detail

// Lloyd's algorithm with k-means++ seeding. Deterministic given the seed:
// weighted draws come from the splitmix stream, ties break on the lowest
// index, and empty clusters are re-seeded to the point farthest from its
// assigned centroid.
inline KmeansResult kmeans(const std::vector<std::vector<double>>& points, size_t k,
                           uint64_t seed, int max_iterations = 100) {
  if (points.empty()) throw std::invalid_argument("kmeans: no points");
  const size_t dims = points[0].size();
  for (const auto& p : points)
    if (p.size() != dims) throw std::invalid_argument("kmeans: ragged points");

  std::set<std::vector<double>> distinct(points.begin(), points.end());
  if (k == 0 || k > distinct.size())
    throw std::invalid_argument("kmeans: k exceeds the number of distinct points");

  const size_t n = points.size();
  Rng rng(seed);

  // k-means++ seeding
  std::vector<std::vector<double>> centroids;
  centroids.reserve(k);
  centroids.push_back(points[rng.next_below(n)]);
  std::vector<double> d2(n);
  while (centroids.size() < k) {
    double total = 0.0;
    for (size_t i = 0; i < n; ++i) {
      double best = detail::sq_dist(points[i], centroids[0]);
      for (size_t c = 1; c < centroids.size(); ++c)
        best = std::min(best, detail::sq_dist(points[i], centroids[c]));
      d2[i] = best;
      total += best;
    }
    if (!(total > 0.0)) {
      // remaining points coincide with chosen centers; pick the first unused distinct one
      for (size_t i = 0; i < n; ++i)
        if (std::find(centroids.begin(), centroids.end(), points[i]) == centroids.end()) {
          centroids.push_back(points[i]);
          break;
        }
      continue;
    }
    const double target = rng.next_double() * total;
    double acc = 0.0;
    size_t chosen = n - 1;
    for (size_t i = 0; i < n; ++i) {
      acc += d2[i];
      if (acc > target) {
        chosen = i;
        break;
      }
    }
    centroids.push_back(points[chosen]);
  }

  std::vector<size_t> assignments(n, 0);
  std::vector<double> trace;
  double prev_distortion = std::numeric_limits<double>::infinity();
  int iter = 0;
  for (; iter < max_iterations; ++iter) {
    // assign
    bool changed = false;
    double distortion = 0.0;
    for (size_t i = 0; i < n; ++i) {
      size_t best_c = 0;
      double best = detail::sq_dist(points[i], centroids[0]);
      for (size_t c = 1; c < k; ++c) {
        const double d = detail::sq_dist(points[i], centroids[c]);
        if (d < best) {
          best = d;
          best_c = c;
        }
      }
      distortion += best;
      if (assignments[i] != best_c) {
        assignments[i] = best_c;
        changed = true;
      }
    }
    assert(distortion <= prev_distortion * (1.0 + 1e-12) + 1e-12);
    trace.push_back(distortion);
    prev_distortion = distortion;
    if (!changed && iter > 0) break;

    // update
    std::vector<std::vector<double>> sums(k, std::vector<double>(dims, 0.0));
    std::vector<size_t> counts(k, 0);
    for (size_t i = 0; i < n; ++i) {
      ++counts[assignments[i]];
      for (size_t d = 0; d < dims; ++d) sums[assignments[i]][d] += points[i][d];
    }
    for (size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) {
        // farthest point from its centroid takes over the empty cluster
        size_t far_i = 0;
        double far_d = -1.0;
        for (size_t i = 0; i < n; ++i) {
          const double d = detail::sq_dist(points[i], centroids[assignments[i]]);
          if (d > far_d) {
            far_d = d;
            far_i = i;
          }
        }
        centroids[c] = points[far_i];
        prev_distortion = std::numeric_limits<double>::infinity();
      } else {
        for (size_t d = 0; d < dims; ++d)
          centroids[c][d] = sums[c][d] / static_cast<double>(counts[c]);
      }
    }
  }

  KmeansResult res;
  res.centroids = std::move(centroids);
  res.iterations = iter;
  res.distortion_trace = std::move(trace);
  res.distortion = 0.0;
  for (size_t i = 0; i < n; ++i) {
    size_t best_c = 0;
    double best = detail::sq_dist(points[i], res.centroids[0]);
    for (size_t c = 1; c < k; ++c) {
      const double d = detail::sq_dist(points[i], res.centroids[c]);
      if (d < best) {
        best = d;
        best_c = c;
      }
    }
    assignments[i] = best_c;
    res.distortion += best;
  }
  res.assignments = std::move(assignments);
  return res;
}

enum class SelectionFeature { Framework, Colorfulness, Random };

inline SelectionFeature parse_selection_feature(const std::string& s) {
  if (s == "framework") return SelectionFeature::Framework;
  if (s == "colorfulness") return SelectionFeature::Colorfulness;
  if (s == "random") return SelectionFeature::Random;
  throw std::invalid_argument("unknown selection feature '" + s + "'");
}

inline const char* selection_feature_name(SelectionFeature f) {
  switch (f) {
    case SelectionFeature::Framework: return "framework";
    case SelectionFeature::Colorfulness: return "colorfulness";
    case SelectionFeature::Random: return "random";
  }
  return "?";
}

struct SelectionConfig {
  size_t k = 5;
  size_t per_cluster = 1;
  uint64_t seed = 0;
  SelectionFeature feature = SelectionFeature::Framework;

  void validate() const {
    if (k < 1) throw std::invalid_argument("SelectionConfig: k must be >= 1");
    if (per_cluster < 1)
      throw std::invalid_argument("SelectionConfig: per_cluster must be >= 1");
  }
};

struct SelectionResult {
  // Clusters ordered by ascending centroid (lexicographic); selected
  // indices within a cluster are in draw order.
  std::vector<std::vector<size_t>> selected_per_cluster;
  std::vector<std::vector<double>> centroids;  // same order
  bool shortfall = false;  // some cluster had fewer members than requested
  uint64_t seed = 0;

  std::vector<size_t> flattened() const {
    std::vector<size_t> out;
    for (const auto& c : selected_per_cluster) out.insert(out.end(), c.begin(), c.end());
    return out;
  }
};

// Clusters the candidates and draws per_cluster of them uniformly without
// replacement from each cluster. feature == Random skips clustering and
// draws k * per_cluster from the whole pool.
inline SelectionResult select_representative(const std::vector<std::vector<double>>& features,
                                             const SelectionConfig& cfg) {
  cfg.validate();
  if (cfg.k > features.size())
    throw std::invalid_argument("select_representative: k exceeds candidate count");
  SelectionResult result;
  result.seed = cfg.seed;
  Rng rng(cfg.seed);

  if (cfg.feature == SelectionFeature::Random) {
    const size_t want = std::min(cfg.k * cfg.per_cluster, features.size());
    result.shortfall = want < cfg.k * cfg.per_cluster;
    result.selected_per_cluster.push_back(
        rng.sample_without_replacement(features.size(), want));
    return result;
  }

  const KmeansResult km = kmeans(features, cfg.k, rng.next_u64());

  std::vector<size_t> order(cfg.k);
  for (size_t c = 0; c < cfg.k; ++c) order[c] = c;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return km.centroids[a] < km.centroids[b];
  });

  for (size_t rank = 0; rank < cfg.k; ++rank) {
    const size_t c = order[rank];
    std::vector<size_t> members;
    for (size_t i = 0; i < features.size(); ++i)
      if (km.assignments[i] == c) members.push_back(i);
    const size_t take = std::min(cfg.per_cluster, members.size());
    if (take < cfg.per_cluster) result.shortfall = true;
    std::vector<size_t> picked;
    for (size_t j : rng.sample_without_replacement(members.size(), take))
      picked.push_back(members[j]);
    result.selected_per_cluster.push_back(std::move(picked));
    result.centroids.push_back(km.centroids[c]);
  }
  return result;
}

// Hasler-Suesstrunk colorfulness on display-encoded [0,255] channels:
// sqrt(var_rg + var_yb) + 0.3 sqrt(mean_rg^2 + mean_yb^2). Set
// on_linear to skip display encoding for ablation runs.
inline double colorfulness(const LinearImage& img,
                           const TransferFunction& transfer = TransferFunction::srgb(),
                           bool on_linear = false) {
  const size_t n = img.pixel_count();
  std::vector<double> rg(n), yb(n);
  for (size_t i = 0; i < n; ++i) {
    double r = std::clamp(img.at(0, i), 0.0, 1.0);
    double g = std::clamp(img.at(1, i), 0.0, 1.0);
    double b = std::clamp(img.at(2, i), 0.0, 1.0);
    if (!on_linear) {
      r = transfer.oetf(r);
      g = transfer.oetf(g);
      b = transfer.oetf(b);
    }
    r *= 255.0;
    g *= 255.0;
    b *= 255.0;
    rg[i] = r - g;
    yb[i] = 0.5 * (r + g) - b;
  }
  const double var_rg = population_variance(rg);
  const double var_yb = population_variance(yb);
  const double mu_rg = mean(rg);
  const double mu_yb = mean(yb);
  return std::sqrt(var_rg + var_yb) + 0.3 * std::sqrt(mu_rg * mu_rg + mu_yb * mu_yb);
}

struct RobustnessResult {
  std::vector<double> pccs;  // one per completed trial
  size_t excluded = 0;       // trials dropped for degenerate pairing
};

// Repeats the selection twice per trial with independent sub-seeds and
// correlates the mos-like values of the two picks. Clustered selections
// pair by ascending centroid order; the random baseline pairs by draw
// order. Zero-variance pairings are excluded rather than propagated.
inline RobustnessResult robustness_protocol(const std::vector<std::vector<double>>& features,
                                            const std::vector<double>& mos_like,
                                            const SelectionConfig& cfg, size_t trials) {
  if (trials < 2) throw std::invalid_argument("robustness_protocol: need >= 2 trials");
  if (mos_like.size() != features.size())
    throw std::invalid_argument("robustness_protocol: mos_like size mismatch");
  RobustnessResult out;
  for (size_t t = 0; t < trials; ++t) {
    SelectionConfig c1 = cfg, c2 = cfg;
    c1.seed = derive_seed(cfg.seed, 2 * t);
    c2.seed = derive_seed(cfg.seed, 2 * t + 1);
    const auto s1 = select_representative(features, c1).flattened();
    const auto s2 = select_representative(features, c2).flattened();
    if (s1.size() != s2.size() || s1.size() < 2) {
      ++out.excluded;
      continue;
    }
    std::vector<double> m1(s1.size()), m2(s2.size());
    for (size_t i = 0; i < s1.size(); ++i) {
      m1[i] = mos_like[s1[i]];
      m2[i] = mos_like[s2[i]];
    }
    try {
      out.pccs.push_back(pearson(m1, m2));
    } catch (const std::invalid_argument&) {
      ++out.excluded;  // degenerate pairing
    }
  }
  return out;
}

}  // namespace wcg
