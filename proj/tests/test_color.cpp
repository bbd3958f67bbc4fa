#include <catch2/catch.hpp>

#include <cstdio>
#include <fstream>

#include "wcg/color.hpp"
#include "wcg/gamut_io.hpp"
#include "wcg/image.hpp"
#include "wcg/rng.hpp"

using namespace wcg;

namespace {

LinearImage solid(Vec3 rgb, const Gamut& g, int w = 4, int h = 4) {
  LinearImage img(w, h, ColorEncoding::rgb(g));
  for (size_t i = 0; i < img.pixel_count(); ++i) img.set_pixel(i, rgb);
  return img;
}

}  // namespace

TEST_CASE("builtin gamuts carry the published primaries") {
  const Gamut toy = builtin_gamut(BuiltinGamut::Toy);
  CHECK(toy.red.x == Approx(0.570).margin(1e-12));
  CHECK(toy.red.y == Approx(0.320).margin(1e-12));
  CHECK(toy.green.x == Approx(0.300).margin(1e-12));
  CHECK(toy.green.y == Approx(0.530).margin(1e-12));
  CHECK(toy.blue.x == Approx(0.190).margin(1e-12));
  CHECK(toy.blue.y == Approx(0.130).margin(1e-12));

  const Gamut p3 = builtin_gamut(BuiltinGamut::P3);
  CHECK(p3.blue.x == Approx(0.150).margin(1e-12));
  CHECK(p3.blue.y == Approx(0.060).margin(1e-12));

  const Gamut rec709 = builtin_gamut(BuiltinGamut::Rec709);
  CHECK(rec709.green.x == Approx(0.300).margin(1e-12));
  CHECK(rec709.green.y == Approx(0.600).margin(1e-12));

  const Gamut rec2020 = builtin_gamut(BuiltinGamut::Rec2020);
  CHECK(rec2020.red.x == Approx(0.708).margin(1e-12));
  CHECK(rec2020.green.y == Approx(0.797).margin(1e-12));
  CHECK(rec2020.blue.x == Approx(0.131).margin(1e-12));

  for (auto b : {BuiltinGamut::P3, BuiltinGamut::Rec709, BuiltinGamut::Rec2020,
                 BuiltinGamut::Toy}) {
    const Gamut g = builtin_gamut(b);
    CHECK(g.white.x == Approx(0.3127).margin(1e-12));
    CHECK(g.white.y == Approx(0.3290).margin(1e-12));
    CHECK(g.triangle_area() > 0.0);
  }
}

TEST_CASE("chromaticity invariants are enforced") {
  CHECK_THROWS_AS(Chromaticity(-0.1, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(Chromaticity(0.3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Chromaticity(0.7, 0.4), std::invalid_argument);
  CHECK_NOTHROW(Chromaticity(0.0, 1.0));
}

TEST_CASE("gamut construction rejects degenerate geometry") {
  const Chromaticity d65(kD65x, kD65y);
  // collinear primaries
  CHECK_THROWS_AS(Gamut("bad", {0.1, 0.1}, {0.2, 0.2}, {0.3, 0.3}, d65),
                  std::invalid_argument);
  // white outside the triangle
  CHECK_THROWS_AS(Gamut("bad", {0.6, 0.3}, {0.3, 0.6}, {0.2, 0.2},
                        Chromaticity(0.7, 0.25)),
                  std::invalid_argument);
}

TEST_CASE("rgb_to_xyz matches the published sRGB derivation") {
  const Mat3 m = rgb_to_xyz_matrix(builtin_gamut(BuiltinGamut::Rec709));
  CHECK(m(0, 0) == Approx(0.4124).margin(1e-3));
  CHECK(m(0, 1) == Approx(0.3576).margin(1e-3));
  CHECK(m(0, 2) == Approx(0.1805).margin(1e-3));
}

TEST_CASE("white normalization and invertibility") {
  for (auto b : {BuiltinGamut::P3, BuiltinGamut::Rec709, BuiltinGamut::Rec2020,
                 BuiltinGamut::Toy}) {
    const Gamut g = builtin_gamut(b);
    const Mat3 m = rgb_to_xyz_matrix(g);

    const Vec3 white = m * Vec3{1.0, 1.0, 1.0};
    const double sum = white.x + white.y + white.z;
    CHECK(white.x / sum == Approx(g.white.x).margin(1e-10));
    CHECK(white.y / sum == Approx(g.white.y).margin(1e-10));
    CHECK(white.y == Approx(1.0).margin(1e-10));

    const Mat3 ident = m.inverse() * m;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        CHECK(ident(r, c) == Approx(r == c ? 1.0 : 0.0).margin(1e-10));
  }
}

TEST_CASE("matrix round trip on random RGB triples") {
  const Gamut g = builtin_gamut(BuiltinGamut::P3);
  const Mat3 m = rgb_to_xyz_matrix(g);
  const Mat3 mi = xyz_to_rgb_matrix(g);
  Rng rng(42);
  for (int i = 0; i < 200; ++i) {
    const Vec3 rgb{rng.next_double(), rng.next_double(), rng.next_double()};
    const Vec3 back = mi * (m * rgb);
    CHECK(back.x == Approx(rgb.x).margin(1e-9));
    CHECK(back.y == Approx(rgb.y).margin(1e-9));
    CHECK(back.z == Approx(rgb.z).margin(1e-9));
  }
}

TEST_CASE("convert_gamut identity and round trip") {
  const Gamut p3 = builtin_gamut(BuiltinGamut::P3);
  const Gamut rec709 = builtin_gamut(BuiltinGamut::Rec709);
  Rng rng(7);
  LinearImage img(8, 8, ColorEncoding::rgb(p3));
  for (size_t i = 0; i < img.pixel_count(); ++i)
    img.set_pixel(i, {rng.next_double(), rng.next_double(), rng.next_double()});

  const LinearImage same = convert_gamut(img, p3, p3);
  const LinearImage round = convert_gamut(convert_gamut(img, p3, rec709), rec709, p3);
  for (size_t i = 0; i < img.pixel_count(); ++i)
    for (int c = 0; c < 3; ++c) {
      CHECK(same.at(c, i) == Approx(img.at(c, i)).margin(1e-12));
      CHECK(round.at(c, i) == Approx(img.at(c, i)).margin(1e-9));
    }
}

TEST_CASE("convert_gamut preserves XYZ per pixel") {
  const Gamut p3 = builtin_gamut(BuiltinGamut::P3);
  const Gamut toy = builtin_gamut(BuiltinGamut::Toy);
  Rng rng(11);
  LinearImage img(6, 6, ColorEncoding::rgb(p3));
  for (size_t i = 0; i < img.pixel_count(); ++i)
    img.set_pixel(i, {rng.next_double(), rng.next_double(), rng.next_double()});
  const LinearImage out = convert_gamut(img, p3, toy);
  const Mat3 m_src = rgb_to_xyz_matrix(p3);
  const Mat3 m_dst = rgb_to_xyz_matrix(toy);
  for (size_t i = 0; i < img.pixel_count(); ++i) {
    const Vec3 a = m_src * img.pixel(i);
    const Vec3 b = m_dst * out.pixel(i);
    CHECK(b.x == Approx(a.x).margin(1e-9));
    CHECK(b.y == Approx(a.y).margin(1e-9));
    CHECK(b.z == Approx(a.z).margin(1e-9));
  }
}

TEST_CASE("pure P3 red leaves the Rec709 cube") {
  const Gamut p3 = builtin_gamut(BuiltinGamut::P3);
  const Gamut rec709 = builtin_gamut(BuiltinGamut::Rec709);
  // independent route: explicit matrix product on the single triple
  const Mat3 m = xyz_to_rgb_matrix(rec709) * rgb_to_xyz_matrix(p3);
  const Vec3 expect = m * Vec3{1.0, 0.0, 0.0};
  CHECK((expect.x < 0.0 || expect.y < 0.0 || expect.z < 0.0));

  const LinearImage out = convert_gamut(solid({1, 0, 0}, p3), p3, rec709);
  CHECK(out.at(0, 0) == Approx(expect.x).margin(1e-12));
  CHECK(out.at(1, 0) == Approx(expect.y).margin(1e-12));
  CHECK(out.at(2, 0) == Approx(expect.z).margin(1e-12));
  CHECK((out.at(0, 0) < 0.0 || out.at(1, 0) < 0.0 || out.at(2, 0) < 0.0));
}

TEST_CASE("convert_gamut rejects mismatched encoding") {
  const Gamut p3 = builtin_gamut(BuiltinGamut::P3);
  const Gamut rec709 = builtin_gamut(BuiltinGamut::Rec709);
  const LinearImage img = solid({0.5, 0.5, 0.5}, rec709);
  CHECK_THROWS_AS(convert_gamut(img, p3, rec709), std::invalid_argument);
}

TEST_CASE("pixel_chromaticity hits the table values") {
  const Gamut p3 = builtin_gamut(BuiltinGamut::P3);
  const Gamut toy = builtin_gamut(BuiltinGamut::Toy);

  for (auto b : {BuiltinGamut::P3, BuiltinGamut::Rec709, BuiltinGamut::Toy}) {
    const Gamut g = builtin_gamut(b);
    const Chromaticity w = pixel_chromaticity({1, 1, 1}, g);
    CHECK(w.x == Approx(g.white.x).margin(1e-10));
    CHECK(w.y == Approx(g.white.y).margin(1e-10));
  }

  const Chromaticity red = pixel_chromaticity({1, 0, 0}, p3);
  CHECK(red.x == Approx(0.680).margin(1e-10));
  CHECK(red.y == Approx(0.320).margin(1e-10));

  const Chromaticity blue = pixel_chromaticity({0, 0, 1}, toy);
  CHECK(blue.x == Approx(0.190).margin(1e-10));
  CHECK(blue.y == Approx(0.130).margin(1e-10));

  CHECK_THROWS_AS(pixel_chromaticity({0, 0, 0}, p3), std::domain_error);
}

TEST_CASE("in_gamut point tests") {
  const Gamut p3 = builtin_gamut(BuiltinGamut::P3);
  const Gamut rec709 = builtin_gamut(BuiltinGamut::Rec709);

  const Chromaticity d65(kD65x, kD65y);
  for (auto b : {BuiltinGamut::P3, BuiltinGamut::Rec709, BuiltinGamut::Rec2020,
                 BuiltinGamut::Toy})
    CHECK(in_gamut(d65, builtin_gamut(b)));

  CHECK_FALSE(in_gamut(Chromaticity(0.680, 0.320), rec709));  // P3 red
  CHECK(in_gamut(Chromaticity(0.640, 0.330), p3));            // Rec709 red

  // vertices are inside their own gamut at eps >= 0
  for (const Chromaticity& v : {p3.red, p3.green, p3.blue})
    CHECK(in_gamut(v, p3, 0.0));
}

TEST_CASE("out_of_gamut_fraction") {
  const Gamut p3 = builtin_gamut(BuiltinGamut::P3);
  const Gamut rec709 = builtin_gamut(BuiltinGamut::Rec709);

  CHECK(out_of_gamut_fraction(solid({0.5, 0.5, 0.5}, p3), p3, rec709) == 0.0);
  CHECK(out_of_gamut_fraction(solid({1, 0, 0}, p3), p3, rec709) == 1.0);

  // half P3 red, half white
  LinearImage img = solid({1, 0, 0}, p3, 4, 2);
  for (size_t i = 0; i < img.pixel_count() / 2; ++i) img.set_pixel(i, {1, 1, 1});
  const double frac = out_of_gamut_fraction(img, p3, rec709);
  CHECK(frac == Approx(0.5).margin(0.5 / static_cast<double>(img.pixel_count())));

  // black pixels count as inside
  CHECK(out_of_gamut_fraction(solid({0, 0, 0}, p3), p3, rec709) == 0.0);
}

TEST_CASE("nested builtin gamuts") {
  const Gamut p3 = builtin_gamut(BuiltinGamut::P3);
  const Gamut rec709 = builtin_gamut(BuiltinGamut::Rec709);
  const Gamut rec2020 = builtin_gamut(BuiltinGamut::Rec2020);
  const Gamut toy = builtin_gamut(BuiltinGamut::Toy);
  CHECK(gamut_contains(p3, rec709));
  CHECK(gamut_contains(rec709, toy));
  CHECK(gamut_contains(rec2020, rec709));
  CHECK_FALSE(gamut_contains(toy, rec709));
  CHECK_FALSE(gamut_contains(rec709, p3));
  // the P3 red primary pokes ~0.0013 xy units outside the Rec2020 triangle,
  // so strict containment fails at a tight eps and holds with slack
  CHECK_FALSE(gamut_contains(rec2020, p3));
  CHECK(gamut_contains(rec2020, p3, 0.01));
}

TEST_CASE("gamut JSON loading") {
  const char* path = "test_gamut.json";
  {
    std::ofstream out(path);
    out << R"({"name":"custom","red":[0.64,0.33],"green":[0.30,0.60],)"
        << R"("blue":[0.15,0.06],"white":[0.3127,0.3290]})";
  }
  const Gamut g = load_gamut_file(path);
  CHECK(g.name == "custom");
  CHECK(g.red.x == Approx(0.64));
  CHECK(g.white.y == Approx(0.3290));

  CHECK(resolve_gamut("rec709").name == "Rec709");
  CHECK(resolve_gamut("P3").name == "P3");
  CHECK(resolve_gamut("dci-p3").name == "P3");
  CHECK(resolve_gamut(path).name == "custom");
  CHECK_THROWS(resolve_gamut("nonexistent-gamut"));
  std::remove(path);
}
