#include <catch2/catch.hpp>

#include <algorithm>
#include <cmath>
#include <set>

#include "wcg/numeric.hpp"
#include "wcg/selection.hpp"

using namespace wcg;

namespace {

// k well-separated blobs on a line
std::vector<std::vector<double>> blob_points(size_t k, size_t per_blob, double spread,
                                             uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<double>> pts;
  for (size_t b = 0; b < k; ++b)
    for (size_t i = 0; i < per_blob; ++i)
      pts.push_back({10.0 * static_cast<double>(b) + spread * (rng.next_double() - 0.5)});
  return pts;
}

}  // namespace

TEST_CASE("kmeans with one cluster returns the mean") {
  const std::vector<std::vector<double>> pts{{1.0, 2.0}, {3.0, 4.0}, {5.0, 0.0}};
  const KmeansResult r = kmeans(pts, 1, 7);
  CHECK(r.centroids[0][0] == Approx(3.0).margin(1e-12));
  CHECK(r.centroids[0][1] == Approx(2.0).margin(1e-12));
}

TEST_CASE("kmeans separates well-separated blobs") {
  const auto pts = blob_points(2, 20, 1.0, 3);
  const KmeansResult r = kmeans(pts, 2, 99);
  // points 0..19 belong to one cluster, 20..39 to the other
  for (size_t i = 1; i < 20; ++i) CHECK(r.assignments[i] == r.assignments[0]);
  for (size_t i = 21; i < 40; ++i) CHECK(r.assignments[i] == r.assignments[20]);
  CHECK(r.assignments[0] != r.assignments[20]);
}

TEST_CASE("kmeans with k equal to the point count") {
  const std::vector<std::vector<double>> pts{{0.0}, {1.0}, {2.0}, {5.0}};
  const KmeansResult r = kmeans(pts, 4, 1);
  CHECK(r.distortion == Approx(0.0).margin(1e-15));
  std::set<size_t> used(r.assignments.begin(), r.assignments.end());
  CHECK(used.size() == 4);
}

TEST_CASE("kmeans rejects k beyond distinct points") {
  const std::vector<std::vector<double>> pts{{1.0}, {1.0}, {2.0}};
  CHECK_THROWS_AS(kmeans(pts, 3, 0), std::invalid_argument);
  CHECK_NOTHROW(kmeans(pts, 2, 0));
  CHECK_THROWS_AS(kmeans(pts, 0, 0), std::invalid_argument);
}

TEST_CASE("kmeans distortion trace is non-increasing") {
  const auto pts = blob_points(4, 30, 6.0, 8);
  const KmeansResult r = kmeans(pts, 4, 21);
  for (size_t i = 1; i < r.distortion_trace.size(); ++i)
    CHECK(r.distortion_trace[i] <= r.distortion_trace[i - 1] * (1.0 + 1e-12) + 1e-12);
}

TEST_CASE("kmeans is reproducible from the seed") {
  const auto pts = blob_points(3, 15, 4.0, 12);
  const KmeansResult a = kmeans(pts, 3, 5551);
  const KmeansResult b = kmeans(pts, 3, 5551);
  CHECK(a.assignments == b.assignments);
  CHECK(a.centroids == b.centroids);
}

TEST_CASE("select_representative basics") {
  const auto pts = blob_points(5, 5, 0.5, 4);  // 25 candidates

  SelectionConfig cfg;
  cfg.k = 5;
  cfg.per_cluster = 5;
  cfg.seed = 17;
  // per_cluster == cluster size -> everything is selected
  const SelectionResult all = select_representative(pts, cfg);
  const auto all_flat = all.flattened();
  CHECK(all_flat.size() == 25);
  std::set<size_t> uniq(all_flat.begin(), all_flat.end());
  CHECK(uniq.size() == 25);

  // same seed -> identical result
  const SelectionResult again = select_representative(pts, cfg);
  CHECK(again.selected_per_cluster == all.selected_per_cluster);
  CHECK(again.centroids == all.centroids);

  // one per cluster over 24 candidates with k = 5
  const auto pts24 = blob_points(4, 6, 0.5, 6);
  SelectionConfig cfg24;
  cfg24.k = 5;
  cfg24.per_cluster = 1;
  cfg24.seed = 3;
  const SelectionResult five = select_representative(pts24, cfg24);
  const auto flat = five.flattened();
  CHECK(flat.size() == 5);
  CHECK(std::set<size_t>(flat.begin(), flat.end()).size() == 5);
  for (size_t c = 0; c < five.selected_per_cluster.size(); ++c)
    CHECK(five.selected_per_cluster[c].size() == 1);
}

TEST_CASE("selected indices are unique, in range, and cluster-consistent") {
  Rng rng(33);
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 40; ++i) pts.push_back({rng.next_double(), rng.next_double()});
  for (uint64_t seed = 0; seed < 20; ++seed) {
    SelectionConfig cfg;
    cfg.k = 4;
    cfg.per_cluster = 2;
    cfg.seed = seed;
    const SelectionResult r = select_representative(pts, cfg);
    const auto flat = r.flattened();
    std::set<size_t> uniq(flat.begin(), flat.end());
    CHECK(uniq.size() == flat.size());
    for (size_t i : flat) CHECK(i < pts.size());
    // centroids sorted ascending
    for (size_t c = 1; c < r.centroids.size(); ++c)
      CHECK(!(r.centroids[c] < r.centroids[c - 1]));
  }
}

TEST_CASE("random selection draws without clustering") {
  const auto pts = blob_points(3, 10, 1.0, 2);
  SelectionConfig cfg;
  cfg.k = 3;
  cfg.per_cluster = 2;
  cfg.seed = 9;
  cfg.feature = SelectionFeature::Random;
  const SelectionResult r = select_representative(pts, cfg);
  CHECK(r.flattened().size() == 6);
  CHECK(r.centroids.empty());
  const SelectionResult r2 = select_representative(pts, cfg);
  CHECK(r.selected_per_cluster == r2.selected_per_cluster);
}

TEST_CASE("shortfall flag when clusters run out") {
  // two distinct values, ask for more per cluster than exists
  const std::vector<std::vector<double>> pts{{0.0}, {0.0}, {10.0}};
  SelectionConfig cfg;
  cfg.k = 2;
  cfg.per_cluster = 2;
  cfg.seed = 1;
  const SelectionResult r = select_representative(pts, cfg);
  CHECK(r.shortfall);
  CHECK(r.flattened().size() == 3);
}

TEST_CASE("colorfulness closed forms") {
  const Gamut p3 = builtin_gamut(BuiltinGamut::P3);

  LinearImage gray(8, 8, ColorEncoding::rgb(p3));
  for (size_t i = 0; i < gray.pixel_count(); ++i) {
    const double v = static_cast<double>(i) / gray.pixel_count();
    gray.set_pixel(i, {v, v, v});
  }
  CHECK(colorfulness(gray) == Approx(0.0).margin(1e-9));

  LinearImage red(8, 8, ColorEncoding::rgb(p3));
  for (size_t i = 0; i < red.pixel_count(); ++i) red.set_pixel(i, {1.0, 0.0, 0.0});
  const double expect = 0.3 * std::sqrt(255.0 * 255.0 + 127.5 * 127.5);
  CHECK(colorfulness(red) == Approx(expect).margin(1e-6));
}

TEST_CASE("colorfulness matches a direct-formula oracle and ignores pixel order") {
  const Gamut p3 = builtin_gamut(BuiltinGamut::P3);
  Rng rng(44);
  LinearImage img(10, 10, ColorEncoding::rgb(p3));
  for (size_t i = 0; i < img.pixel_count(); ++i)
    img.set_pixel(i, {rng.next_double(), rng.next_double(), rng.next_double()});

  // oracle: direct formula, naive accumulation, same encoding convention
  const TransferFunction tf = TransferFunction::srgb();
  const size_t n = img.pixel_count();
  double sum_rg = 0, sum_yb = 0, sum_rg2 = 0, sum_yb2 = 0;
  for (size_t i = 0; i < n; ++i) {
    const double r = 255.0 * tf.oetf(img.at(0, i));
    const double g = 255.0 * tf.oetf(img.at(1, i));
    const double b = 255.0 * tf.oetf(img.at(2, i));
    const double rg = r - g, yb = 0.5 * (r + g) - b;
    sum_rg += rg;
    sum_yb += yb;
    sum_rg2 += rg * rg;
    sum_yb2 += yb * yb;
  }
  const double mu_rg = sum_rg / n, mu_yb = sum_yb / n;
  const double var_rg = sum_rg2 / n - mu_rg * mu_rg;
  const double var_yb = sum_yb2 / n - mu_yb * mu_yb;
  const double oracle =
      std::sqrt(var_rg + var_yb) + 0.3 * std::sqrt(mu_rg * mu_rg + mu_yb * mu_yb);
  CHECK(colorfulness(img) == Approx(oracle).margin(1e-9));

  // permuting pixels changes nothing
  LinearImage permuted(10, 10, ColorEncoding::rgb(p3));
  for (size_t i = 0; i < n; ++i) {
    const size_t j = (i * 37 + 11) % n;
    permuted.set_pixel(i, img.pixel(j));
  }
  CHECK(colorfulness(permuted) == Approx(colorfulness(img)).margin(1e-9));
}

TEST_CASE("robustness protocol recovers identical values on separated clusters") {
  // duplicate points per cluster: within-cluster variance is zero
  std::vector<std::vector<double>> pts;
  std::vector<double> mos;
  for (size_t b = 0; b < 5; ++b)
    for (int i = 0; i < 4; ++i) {
      pts.push_back({static_cast<double>(b)});
      mos.push_back(static_cast<double>(b));
    }
  SelectionConfig cfg;
  cfg.k = 5;
  cfg.per_cluster = 1;
  cfg.seed = 31;
  const RobustnessResult r = robustness_protocol(pts, mos, cfg, 20);
  REQUIRE(r.pccs.size() + r.excluded == 20);
  for (double p : r.pccs) CHECK(p == Approx(1.0).margin(1e-12));
}

TEST_CASE("framework selection correlates better than random on clustered data") {
  Rng rng(66);
  std::vector<std::vector<double>> pts;
  std::vector<double> mos;
  for (size_t b = 0; b < 5; ++b)
    for (int i = 0; i < 8; ++i) {
      const double v = 10.0 * static_cast<double>(b) + rng.next_double();
      pts.push_back({v});
      mos.push_back(v);
    }
  SelectionConfig cfg;
  cfg.k = 5;
  cfg.per_cluster = 1;
  cfg.seed = 12;
  const RobustnessResult framework = robustness_protocol(pts, mos, cfg, 50);
  cfg.feature = SelectionFeature::Random;
  const RobustnessResult random = robustness_protocol(pts, mos, cfg, 50);
  CHECK(mean(framework.pccs) > mean(random.pccs) + 0.3);
}

TEST_CASE("robustness protocol input validation") {
  const std::vector<std::vector<double>> pts{{0.0}, {1.0}, {2.0}};
  const std::vector<double> mos{0.0, 1.0, 2.0};
  SelectionConfig cfg;
  cfg.k = 2;
  CHECK_THROWS_AS(robustness_protocol(pts, mos, cfg, 1), std::invalid_argument);
  CHECK_THROWS_AS(robustness_protocol(pts, {0.0, 1.0}, cfg, 5), std::invalid_argument);
}
