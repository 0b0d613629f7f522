#include "adks/dct.hpp"

#include <cmath>

namespace adks {

namespace {

// Orthonormal DCT-II basis: B[u][x] = c(u)/2 * cos(pi*u*(2x+1)/16) with
// c(0)=1/sqrt(2), c(u)=1 otherwise. forward = B f B^T, inverse = B^T F B.
const std::array<std::array<double, 8>, 8>& basis() {
  static const auto b = [] {
    std::array<std::array<double, 8>, 8> m{};
    const double pi = std::acos(-1.0);
    for (int u = 0; u < 8; ++u) {
      const double cu = (u == 0) ? 1.0 / std::sqrt(2.0) : 1.0;
      for (int x = 0; x < 8; ++x) {
        m[u][x] = 0.5 * cu * std::cos(pi * u * (2 * x + 1) / 16.0);
      }
    }
    return m;
  }();
  return b;
}

} // namespace

CoeffWindow forward_dct(const PixelWindow& w) {
  const auto& b = basis();
  // rows: t = B f
  std::array<std::array<double, 8>, 8> t{};
  for (int u = 0; u < 8; ++u) {
    for (int y = 0; y < 8; ++y) {
      double acc = 0.0;
      for (int x = 0; x < 8; ++x) acc += b[u][x] * w.at(x, y);
      t[u][y] = acc;
    }
  }
  // columns: F = t B^T
  CoeffWindow out;
  for (int u = 0; u < 8; ++u) {
    for (int v = 0; v < 8; ++v) {
      double acc = 0.0;
      for (int y = 0; y < 8; ++y) acc += t[u][y] * b[v][y];
      out.at(u, v) = acc;
    }
  }
  return out;
}

PixelWindow inverse_dct(const CoeffWindow& c) {
  const auto& b = basis();
  // rows: t = B^T F
  std::array<std::array<double, 8>, 8> t{};
  for (int x = 0; x < 8; ++x) {
    for (int v = 0; v < 8; ++v) {
      double acc = 0.0;
      for (int u = 0; u < 8; ++u) acc += b[u][x] * c.at(u, v);
      t[x][v] = acc;
    }
  }
  // columns: f = t B
  PixelWindow out;
  for (int x = 0; x < 8; ++x) {
    for (int y = 0; y < 8; ++y) {
      double acc = 0.0;
      for (int v = 0; v < 8; ++v) acc += t[x][v] * b[v][y];
      out.at(x, y) = acc;
    }
  }
  return out;
}

} // namespace adks
