// Drives the installed CLI binary: subcommand behavior, exit codes, and
// output formats that the in-process tests cannot see.

#include <catch2/catch.hpp>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "wcg/image_io.hpp"
#include "wcg/rng.hpp"
#include "wcg/stats.hpp"

using namespace wcg;
namespace fs = std::filesystem;

namespace {

int cli(const std::string& workdir, const std::string& args) {
  const std::string cmd = "cd \"" + workdir + "\" && \"" + WCG_CLI_PATH + "\" " + args +
                          " > cli_stdout.txt 2> cli_stderr.txt";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::current_path() / "cli_test_tmp";
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("map on an in-gamut image equals primary re-expression") {
  TempDir tmp;
  const Gamut p3 = builtin_gamut(BuiltinGamut::P3);
  const Gamut rec709 = builtin_gamut(BuiltinGamut::Rec709);

  // in-gamut content: mid-range colors near gray
  LinearImage img(16, 16, ColorEncoding::rgb(p3));
  Rng rng(5);
  for (size_t i = 0; i < img.pixel_count(); ++i)
    img.set_pixel(i, {0.35 + 0.3 * rng.next_double(), 0.35 + 0.3 * rng.next_double(),
                      0.35 + 0.3 * rng.next_double()});
  REQUIRE(out_of_gamut_fraction(img, p3, rec709) == 0.0);
  save_image(img, (tmp.path / "in.png").string(), TransferFunction::srgb(), 16);

  REQUIRE(cli(tmp.path.string(),
              "map --op clip --src P3 --dst Rec709 --in in.png --out out.png") == 0);

  // oracle: load, re-express, save with the same pipeline
  const LinearImage loaded =
      load_image((tmp.path / "in.png").string(), TransferFunction::srgb(), p3);
  const LinearImage expected = convert_gamut(loaded, p3, rec709);
  save_image(expected, (tmp.path / "expected.png").string(), TransferFunction::srgb(), 16);

  const LinearImage got = load_image((tmp.path / "out.png").string(),
                                     TransferFunction::srgb(), rec709);
  const LinearImage want = load_image((tmp.path / "expected.png").string(),
                                      TransferFunction::srgb(), rec709);
  for (size_t i = 0; i < got.pixel_count(); ++i)
    for (int c = 0; c < 3; ++c) {
      // within one 16-bit code in the encoded domain
      const double tol = 1.5 / 65535.0 * 3.0;  // generous linear-domain bound
      CHECK(got.at(c, i) == Approx(want.at(c, i)).margin(tol));
    }
}

TEST_CASE("stats subcommand matches the library") {
  TempDir tmp;
  {
    std::ofstream csv(tmp.path / "data.csv");
    csv << "a,b\n1,10\n2,11\n3,12\n4,13\n5,15\n";
  }
  REQUIRE(cli(tmp.path.string(),
              "stats --csv data.csv --col-a a --col-b b --side two-sided --out st.json") == 0);
  std::ifstream in(tmp.path / "st.json");
  nlohmann::json j;
  in >> j;

  const std::vector<double> a{1, 2, 3, 4, 5}, b{10, 11, 12, 13, 15};
  const TestResult w = welch_t(a, b, TestSide::TwoSided);
  const TestResult f = f_test(a, b, TestSide::TwoSided);
  CHECK(j["welch_t"]["statistic"].get<double>() == Approx(w.statistic).margin(1e-6));
  CHECK(j["welch_t"]["p_value"].get<double>() == Approx(w.p_value).margin(1e-6));
  CHECK(j["welch_t"]["df"].get<double>() == Approx(w.df1).margin(1e-6));
  CHECK(j["f_test"]["statistic"].get<double>() == Approx(f.statistic).margin(1e-6));
  CHECK(j["pearson"].get<double>() == Approx(pearson(a, b)).margin(1e-6));
  CHECK(j["format"] == "wcg-stats");
  CHECK(j.contains("tool_version"));
}

TEST_CASE("criteria JSON carries the four criteria") {
  TempDir tmp;
  {
    std::ofstream csv(tmp.path / "feats.csv");
    csv << "# targets: Rec709,Toy\n";
    csv << "path,d_1,d_2\n";
    csv << "a.png,0.0,0.0\nb.png,2.0,0.0\nc.png,0.0,2.0\nd.png,2.0,2.0\n";
  }
  REQUIRE(cli(tmp.path.string(),
              "criteria --features feats.csv --bins 2 --out crit.json") == 0);
  std::ifstream in(tmp.path / "crit.json");
  nlohmann::json j;
  in >> j;
  REQUIRE(j["per_target"].size() == 2);
  CHECK(j["per_target"][0]["target"] == "Rec709");
  CHECK(j["per_target"][0]["coverage"].get<double>() == Approx(1.0));
  CHECK(j["per_target"][0]["uniformity"].get<double>() == Approx(1.0));
  CHECK(j["total"]["coverage"].get<double>() == Approx(1.0));
  CHECK(j["total"]["uniformity"].get<double>() == Approx(1.0));
}

TEST_CASE("benchmark accepts externally pre-mapped image directories") {
  TempDir tmp;
  const std::string dir = tmp.path.string();
  REQUIRE(cli(dir, "gen-corpus --out pool --gamut Rec2020 --size 64x64 --sweeps 6 "
                   "--inset 0 --noise 0 --seed 3") == 0);
  fs::create_directories(tmp.path / "mapped_a");
  fs::create_directories(tmp.path / "mapped_b");
  for (const auto& entry : fs::directory_iterator(tmp.path / "pool")) {
    if (entry.path().extension() != ".png") continue;
    const std::string name = entry.path().filename().string();
    REQUIRE(cli(dir, "map --op compress --src Rec2020 --dst Toy --in pool/" + name +
                         " --out mapped_a/" + name) == 0);
    REQUIRE(cli(dir, "map --op clip --src Rec2020 --dst Toy --in pool/" + name +
                         " --out mapped_b/" + name) == 0);
  }
  REQUIRE(cli(dir, "benchmark --images pool --ref Rec2020 --targets Toy "
                   "--dir-a mapped_a --dir-b mapped_b --select random --k 2 "
                   "--per-cluster 1 --trials 4 --seed 9 --out-csv g.csv --out b.json") == 0);
  std::ifstream in(tmp.path / "b.json");
  nlohmann::json j;
  in >> j;
  CHECK(j["methods"].size() == 2);
  CHECK(j["methods"][1]["method"] == "random");
  // compression hurts more than clipping here, so gains stay positive
  CHECK(j["methods"][0]["per_target"][0]["gain_mean_avg"].get<double>() > 0.0);

  // two targets with external dirs is a usage-level contradiction
  CHECK(cli(dir, "benchmark --images pool --ref Rec2020 --targets Rec709,Toy "
                 "--dir-a mapped_a --dir-b mapped_b --out-csv g2.csv --out b2.json") == 1);
}

TEST_CASE("WCG_THREADS does not change results") {
  TempDir tmp;
  const std::string dir = tmp.path.string();
  REQUIRE(cli(dir, "gen-corpus --out corpus --gamut P3 --size 64x64 --sweeps 5 "
                   "--inset 1 --noise 1 --seed 8") == 0);
  const std::string serial_cmd =
      "cd \"" + dir + "\" && WCG_THREADS=1 \"" WCG_CLI_PATH
      "\" characterize --images corpus --out serial.csv > /dev/null";
  const std::string parallel_cmd =
      "cd \"" + dir + "\" && WCG_THREADS=8 \"" WCG_CLI_PATH
      "\" characterize --images corpus --out parallel.csv > /dev/null";
  REQUIRE(WEXITSTATUS(std::system(serial_cmd.c_str())) == 0);
  REQUIRE(WEXITSTATUS(std::system(parallel_cmd.c_str())) == 0);
  std::ifstream a(tmp.path / "serial.csv"), b(tmp.path / "parallel.csv");
  const std::string sa((std::istreambuf_iterator<char>(a)), {});
  const std::string sb((std::istreambuf_iterator<char>(b)), {});
  CHECK(sa == sb);
  CHECK(!sa.empty());
}

TEST_CASE("exit codes distinguish usage and runtime failures") {
  TempDir tmp;
  CHECK(cli(tmp.path.string(), "--help") == 0);
  CHECK(cli(tmp.path.string(), "map --op clip") == 2);          // missing required flags
  CHECK(cli(tmp.path.string(), "unknown-subcommand") == 2);     // unknown command
  CHECK(cli(tmp.path.string(),
            "criteria --features does_not_exist.csv --out x.json") == 1);
  CHECK(cli(tmp.path.string(),
            "map --op clip --src P3 --dst Rec709 --in missing.png --out o.png") == 1);
}
