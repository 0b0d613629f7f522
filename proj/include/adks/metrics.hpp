#pragma once

#include <array>
#include <cstdint>

#include "adks/image.hpp"
#include "adks/key.hpp"

namespace adks {

// Quality and payload accounting for one embed run. psnr_db is +infinity
// when the images are identical.
struct EmbedReport {
  double capacity_bpp = 0.0;
  double mse = 0.0;
  double psnr_db = 0.0;
  std::array<uint64_t, 8> k_histogram{}; // index i counts windows with k=i+1
  uint64_t payload_bytes_used = 0;
};

// Mean squared error over all samples, channels pooled. Throws
// GeometryError on shape mismatch.
double mse(const PlaneImage& a, const PlaneImage& b);

// 20*log10(255/sqrt(mse)); +infinity for identical images.
double psnr(const PlaneImage& a, const PlaneImage& b);

// (sum of 64-k^2 over records) * 8 / (cover_width * cover_height).
double capacity_bpp(const StegoKey& key);

} // namespace adks
