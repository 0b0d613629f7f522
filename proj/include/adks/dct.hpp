#pragma once

#include <array>

namespace adks {

inline constexpr int kWindowSize = 8;

// One 8x8 spatial window. Real-valued: inverse-transform output precedes
// rounding.
struct PixelWindow {
  std::array<double, 64> s{};

  double& at(int row, int col) { return s[row * 8 + col]; }
  double at(int row, int col) const { return s[row * 8 + col]; }
};

// One 8x8 window of DCT-II coefficients.
struct CoeffWindow {
  std::array<double, 64> c{};

  double& at(int u, int v) { return c[u * 8 + v]; }
  double at(int u, int v) const { return c[u * 8 + v]; }
};

// Orthonormal 2D DCT-II / DCT-III pair on 8x8 windows, computed in double
// precision via a separable row-column product. Matches the direct
// double-sum definition within 1e-9.
CoeffWindow forward_dct(const PixelWindow& w);
PixelWindow inverse_dct(const CoeffWindow& c);

} // namespace adks
