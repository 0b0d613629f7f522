#include "adks/dct.hpp"

#include <cmath>

#include "doctest.h"
#include "testutil.hpp"

using adks::CoeffWindow;
using adks::PixelWindow;

TEST_CASE("constant window transforms to a lone DC term") {
  PixelWindow w;
  w.s.fill(128.0);
  const CoeffWindow F = adks::forward_dct(w);
  CHECK(F.at(0, 0) == doctest::Approx(1024.0).epsilon(1e-12));
  for (int u = 0; u < 8; ++u)
    for (int v = 0; v < 8; ++v)
      if (u || v) CHECK(std::abs(F.at(u, v)) < 1e-9);
}

TEST_CASE("DC-only window inverts to a constant 128") {
  CoeffWindow F;
  F.at(0, 0) = 1024.0;
  const PixelWindow w = adks::inverse_dct(F);
  for (double v : w.s) CHECK(v == doctest::Approx(128.0).epsilon(1e-12));
}

TEST_CASE("zero window stays zero") {
  CoeffWindow F;
  const PixelWindow w = adks::inverse_dct(F);
  for (double v : w.s) CHECK(v == 0.0);
  PixelWindow z;
  const CoeffWindow G = adks::forward_dct(z);
  for (double v : G.c) CHECK(v == 0.0);
}

TEST_CASE("impulse window matches the direct double-sum") {
  PixelWindow w;
  w.at(0, 0) = 1.0;
  const CoeffWindow F = adks::forward_dct(w);
  const auto expect = testutil::oracle_forward(w);
  for (int i = 0; i < 64; ++i)
    CHECK(std::abs(F.c[i] - double(expect[i])) < 1e-9);
  // spot values frozen from the oracle
  CHECK(F.at(0, 0) == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(F.at(0, 1) == doctest::Approx(0.17337998066526841).epsilon(1e-12));
  CHECK(F.at(1, 0) == doctest::Approx(0.17337998066526841).epsilon(1e-12));
}

TEST_CASE("forward matches the direct sum on random windows") {
  testutil::ByteRng rng(101);
  for (int it = 0; it < 200; ++it) {
    const PixelWindow w = testutil::random_window(rng, -1024.0, 1024.0);
    const CoeffWindow F = adks::forward_dct(w);
    const auto expect = testutil::oracle_forward(w);
    for (int i = 0; i < 64; ++i)
      CHECK(std::abs(F.c[i] - double(expect[i])) < 1e-9);
  }
}

TEST_CASE("inverse matches the direct sum on random windows") {
  testutil::ByteRng rng(102);
  for (int it = 0; it < 200; ++it) {
    adks::CoeffWindow F = testutil::random_coeff_window(rng, -1024.0, 1024.0);
    const PixelWindow w = adks::inverse_dct(F);
    const auto expect = testutil::oracle_inverse(F);
    for (int i = 0; i < 64; ++i)
      CHECK(std::abs(w.s[i] - double(expect[i])) < 1e-9);
  }
}

TEST_CASE("round trips are identities within 1e-9") {
  testutil::ByteRng rng(103);
  double worst = 0.0;
  for (int it = 0; it < 1000; ++it) {
    const PixelWindow w = testutil::random_window(rng, -1024.0, 1024.0);
    const PixelWindow back = adks::inverse_dct(adks::forward_dct(w));
    for (int i = 0; i < 64; ++i)
      worst = std::max(worst, std::abs(back.s[i] - w.s[i]));

    const CoeffWindow F = testutil::random_coeff_window(rng, -1024.0, 1024.0);
    const CoeffWindow back2 = adks::forward_dct(adks::inverse_dct(F));
    for (int i = 0; i < 64; ++i)
      worst = std::max(worst, std::abs(back2.c[i] - F.c[i]));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("energy is preserved") {
  testutil::ByteRng rng(104);
  for (int it = 0; it < 200; ++it) {
    const PixelWindow w = testutil::random_window(rng, -1024.0, 1024.0);
    const CoeffWindow F = adks::forward_dct(w);
    double es = 0.0, ec = 0.0;
    for (int i = 0; i < 64; ++i) {
      es += w.s[i] * w.s[i];
      ec += F.c[i] * F.c[i];
    }
    CHECK(std::abs(es - ec) <= 1e-6 * std::max(es, 1.0));
  }
}

TEST_CASE("transform is linear") {
  testutil::ByteRng rng(105);
  for (int it = 0; it < 100; ++it) {
    const PixelWindow x = testutil::random_window(rng, -512.0, 512.0);
    const PixelWindow y = testutil::random_window(rng, -512.0, 512.0);
    const double a = rng.uniform(-2.0, 2.0), b = rng.uniform(-2.0, 2.0);
    PixelWindow mix;
    for (int i = 0; i < 64; ++i) mix.s[i] = a * x.s[i] + b * y.s[i];
    const CoeffWindow lhs = adks::forward_dct(mix);
    const CoeffWindow fx = adks::forward_dct(x);
    const CoeffWindow fy = adks::forward_dct(y);
    for (int i = 0; i < 64; ++i)
      CHECK(std::abs(lhs.c[i] - (a * fx.c[i] + b * fy.c[i])) < 1e-9);
  }
}
