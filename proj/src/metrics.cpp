#include "adks/metrics.hpp"

#include <cmath>
#include <limits>

#include "adks/errors.hpp"

namespace adks {

double mse(const PlaneImage& a, const PlaneImage& b) {
  if (!a.same_geometry(b))
    throw GeometryError("mse: images differ in geometry");
  if (a.sample_count() == 0) return 0.0;
  double acc = 0.0;
  for (uint32_t ch = 0; ch < a.channels; ++ch) {
    const auto& pa = a.planes[ch];
    const auto& pb = b.planes[ch];
    for (size_t i = 0; i < pa.size(); ++i) {
      const double d = double(pa[i]) - double(pb[i]);
      acc += d * d;
    }
  }
  return acc / double(a.sample_count());
}

double psnr(const PlaneImage& a, const PlaneImage& b) {
  const double m = mse(a, b);
  if (m == 0.0) return std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(255.0 / std::sqrt(m));
}

double capacity_bpp(const StegoKey& key) {
  const double pixels = double(key.cover_width) * key.cover_height;
  if (pixels == 0.0) return 0.0;
  uint64_t slots = 0;
  for (const auto& rec : key.records)
    slots += 64 - uint64_t(rec.k) * rec.k;
  return double(slots) * 8.0 / pixels;
}

} // namespace adks
