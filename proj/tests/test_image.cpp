#include "adks/image.hpp"

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "adks/errors.hpp"
#include "doctest.h"
#include "png_fixtures.hpp"
#include "testutil.hpp"

namespace fs = std::filesystem;
using adks::PlaneImage;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("adks_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int n = 0;
    return n;
  }
};

std::vector<uint8_t> slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_CASE("flat PGM loads with exact samples") {
  TempDir tmp;
  const fs::path p = tmp.path / "flat.pgm";
  adks::save_image(testutil::flat_cover(8, 8, 1, 128), p);
  const PlaneImage img = adks::load_image(p);
  CHECK(img.width == 8);
  CHECK(img.height == 8);
  CHECK(img.channels == 1);
  for (uint8_t v : img.planes[0]) CHECK(v == 128);
}

TEST_CASE("PPM geometry passes through") {
  TempDir tmp;
  const fs::path p = tmp.path / "big.ppm";
  adks::save_image(testutil::random_image(512, 512, 3, 7), p);
  const PlaneImage img = adks::load_image(p);
  CHECK(img.width == 512);
  CHECK(img.height == 512);
  CHECK(img.channels == 3);
}

TEST_CASE("save/load round trips exactly on every format") {
  TempDir tmp;
  const PlaneImage gray = testutil::random_image(24, 16, 1, 11);
  const PlaneImage rgb = testutil::random_image(24, 16, 3, 12);
  for (const char* name : {"a.pgm", "a.png"}) {
    const fs::path p = tmp.path / name;
    adks::save_image(gray, p);
    CHECK(adks::load_image(p) == gray);
  }
  for (const char* name : {"b.ppm", "b.png"}) {
    const fs::path p = tmp.path / name;
    adks::save_image(rgb, p);
    CHECK(adks::load_image(p) == rgb);
  }
}

TEST_CASE("two saves of the same image are byte-identical") {
  TempDir tmp;
  const PlaneImage img = testutil::random_image(40, 24, 3, 13);
  for (const char* name : {"x.ppm", "x.png"}) {
    const fs::path p1 = tmp.path / (std::string("1") + name);
    const fs::path p2 = tmp.path / (std::string("2") + name);
    adks::save_image(img, p1);
    adks::save_image(img, p2);
    CHECK(slurp(p1) == slurp(p2));
  }
}

TEST_CASE("load after save after load is byte-stable") {
  TempDir tmp;
  const fs::path p1 = tmp.path / "c1.png";
  const fs::path p2 = tmp.path / "c2.png";
  adks::save_image(testutil::natural_cover(64, 48, 3, 1), p1);
  adks::save_image(adks::load_image(p1), p2);
  CHECK(slurp(p1) == slurp(p2));
}

TEST_CASE("JPEG input is rejected as a lossy container") {
  TempDir tmp;
  const fs::path p = tmp.path / "fake.jpg";
  std::ofstream out(p, std::ios::binary);
  const unsigned char soi[] = {0xFF, 0xD8, 0xFF, 0xE0, 0x00, 0x10};
  out.write(reinterpret_cast<const char*>(soi), sizeof(soi));
  out.close();
  CHECK_THROWS_WITH_AS(adks::load_image(p),
                       doctest::Contains("lossy container"),
                       adks::FormatError);
}

TEST_CASE("JPEG output is rejected") {
  TempDir tmp;
  CHECK_THROWS_WITH_AS(
      adks::save_image(testutil::flat_cover(8, 8, 1, 0), tmp.path / "o.jpg"),
      doctest::Contains("lossy container"), adks::FormatError);
}

TEST_CASE("unsupported and unreadable inputs fail loudly") {
  TempDir tmp;
  CHECK_THROWS_AS(adks::load_image(tmp.path / "missing.pgm"),
                  adks::FormatError);
  const fs::path junk = tmp.path / "junk.bin";
  std::ofstream(junk) << "not an image at all";
  CHECK_THROWS_AS(adks::load_image(junk), adks::FormatError);
  CHECK_THROWS_AS(
      adks::save_image(testutil::flat_cover(8, 8, 1, 0), tmp.path / "o.bmp"),
      adks::FormatError);
}

TEST_CASE("save to an unwritable directory fails") {
  CHECK_THROWS_AS(adks::save_image(testutil::flat_cover(8, 8, 1, 0),
                                   "/no/such/dir/out.pgm"),
                  adks::FormatError);
}

TEST_CASE("16-bit PNM is rejected") {
  TempDir tmp;
  const fs::path p = tmp.path / "deep.pgm";
  std::ofstream out(p, std::ios::binary);
  out << "P5\n2 2\n65535\n";
  const char data[8] = {0};
  out.write(data, 8);
  out.close();
  CHECK_THROWS_AS(adks::load_image(p), adks::FormatError);
}

TEST_CASE("truncated PNM is rejected") {
  TempDir tmp;
  const fs::path p = tmp.path / "short.pgm";
  std::ofstream out(p, std::ios::binary);
  out << "P5\n8 8\n255\n";
  const char data[10] = {0};
  out.write(data, 10);
  out.close();
  CHECK_THROWS_AS(adks::load_image(p), adks::FormatError);
}

TEST_CASE("PNM comments are tolerated") {
  TempDir tmp;
  const fs::path p = tmp.path / "comment.pgm";
  std::ofstream out(p, std::ios::binary);
  out << "P5\n# a comment\n2 # mid-line\n2\n255\n";
  const char data[4] = {1, 2, 3, 4};
  out.write(data, 4);
  out.close();
  const PlaneImage img = adks::load_image(p);
  CHECK(img.width == 2);
  CHECK(img.height == 2);
  CHECK(img.planes[0] == std::vector<uint8_t>{1, 2, 3, 4});
}

TEST_CASE("foreign PNG flavors: palette and interlaced load, alpha and "
          "16-bit are rejected") {
  TempDir tmp;
  auto write = [&](const char* name, const unsigned char* data, size_t n) {
    const fs::path p = tmp.path / name;
    std::ofstream out(p, std::ios::binary);
    out.write(reinterpret_cast<const char*>(data), std::streamsize(n));
    return p;
  };

  SUBCASE("palette expands to RGB with exact colors") {
    const auto p = write("pal.png", png_fixtures::kPalettePng,
                         sizeof(png_fixtures::kPalettePng));
    const PlaneImage img = adks::load_image(p);
    REQUIRE(img.channels == 3);
    REQUIRE(img.width == 4);
    const uint8_t palette[4][3] = {
        {255, 0, 0}, {0, 255, 0}, {0, 0, 255}, {10, 20, 30}};
    for (uint32_t y = 0; y < 4; ++y)
      for (uint32_t x = 0; x < 4; ++x)
        for (uint32_t ch = 0; ch < 3; ++ch)
          CHECK(img.at(ch, x, y) == palette[(x + y) % 4][ch]);
  }
  SUBCASE("interlaced decodes to the exact pixels") {
    const auto p = write("inter.png", png_fixtures::kInterlacedPng,
                         sizeof(png_fixtures::kInterlacedPng));
    const PlaneImage img = adks::load_image(p);
    REQUIRE(img.channels == 3);
    REQUIRE(img.width == 8);
    for (uint32_t y = 0; y < 8; ++y)
      for (uint32_t x = 0; x < 8; ++x) {
        CHECK(img.at(0, x, y) == 30 * x);
        CHECK(img.at(1, x, y) == 30 * y);
        CHECK(img.at(2, x, y) == 10 * x + 5 * y);
      }
  }
  SUBCASE("alpha is rejected") {
    const auto p = write("rgba.png", png_fixtures::kRgbaPng,
                         sizeof(png_fixtures::kRgbaPng));
    CHECK_THROWS_WITH_AS(adks::load_image(p), doctest::Contains("alpha"),
                         adks::FormatError);
  }
  SUBCASE("16-bit depth is rejected") {
    const auto p = write("deep.png", png_fixtures::kGray16Png,
                         sizeof(png_fixtures::kGray16Png));
    CHECK_THROWS_WITH_AS(adks::load_image(p), doctest::Contains("16-bit"),
                         adks::FormatError);
  }
}

TEST_CASE("windowable accepts multiples of 8 and names the bad axis") {
  CHECK_NOTHROW(adks::check_windowable(testutil::flat_cover(512, 512, 1, 0)));
  CHECK_NOTHROW(adks::check_windowable(testutil::flat_cover(8, 8, 1, 0)));
  CHECK_THROWS_WITH_AS(
      adks::check_windowable(testutil::flat_cover(510, 512, 1, 0)),
      doctest::Contains("width"), adks::GeometryError);
  CHECK_THROWS_WITH_AS(
      adks::check_windowable(testutil::flat_cover(512, 510, 1, 0)),
      doctest::Contains("height"), adks::GeometryError);
}

TEST_CASE("crop trims right and bottom edges only") {
  const PlaneImage img = testutil::random_image(21, 18, 3, 14);
  const PlaneImage cropped = adks::crop_to_multiple_of_8(img);
  CHECK(cropped.width == 16);
  CHECK(cropped.height == 16);
  for (uint32_t ch = 0; ch < 3; ++ch)
    for (uint32_t y = 0; y < 16; ++y)
      for (uint32_t x = 0; x < 16; ++x)
        CHECK(cropped.at(ch, x, y) == img.at(ch, x, y));
  CHECK_NOTHROW(adks::check_windowable(cropped));
}
