#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "adks/dct.hpp"
#include "adks/image.hpp"
#include "adks/key.hpp"
#include "adks/metrics.hpp"

namespace adks {

// 8x8 quantization divisors, all >= 1.
struct QuantMatrix {
  std::array<int, 64> q{};

  int at(int u, int v) const { return q[u * 8 + v]; }

  // The standard JPEG luminance table at quality factor 50.
  static const QuantMatrix& jpeg_q50();
};

struct QuantizedWindow {
  std::array<int32_t, 64> d{};

  int32_t& at(int u, int v) { return d[u * 8 + v]; }
  int32_t at(int u, int v) const { return d[u * 8 + v]; }
};

// d[u][v] = round(c[u][v] / q[u][v]), half away from zero.
QuantizedWindow quantize(const CoeffWindow& c, const QuantMatrix& q);

// Side of the largest fully non-zero top-left square of d, floored at 1
// (the DC coefficient is always retained) and raised to policy.k_min.
int dominant_block_size(const QuantizedWindow& d, const KPolicy& policy);

// Normalization factor: ceil of the max coefficient magnitude outside the
// k x k corner; 1 when that region is empty (k=8) or all-zero.
int compute_nf(const CoeffWindow& c, int k);

// Maps an 8-bit secret value into [0, nf]: round(si * nf / 255).
int normalize_pixel(uint8_t si, int nf);

// Inverse of normalize_pixel on an extracted real coefficient. The inner
// round snaps the coefficient to its integer code, the outer rescales:
// clamp(round(round(nsi) * 255 / nf), 0, 255).
uint8_t denormalize_pixel(double nsi, int nf);

struct EmbedWindowResult {
  CoeffWindow modified;
  WindowRecord rec;
  size_t consumed = 0; // payload bytes written into this window
};

// One window of the embed pipeline: quantize, pick k, compute nf, keep the
// k x k corner of the cover coefficients verbatim, and fill the remaining
// L-shaped region (row-major over the 8x8 grid, skipping the corner) with
// normalized payload bytes. Slots past the payload end are set to 0.
EmbedWindowResult embed_window(const CoeffWindow& cover_c,
                               std::span<const uint8_t> payload,
                               const KPolicy& policy, const QuantMatrix& q);

// Secret geometry carried through the pipeline; the payload byte count is
// width * height * channels.
struct SecretGeometry {
  uint32_t width = 0;
  uint32_t height = 0;
  uint32_t channels = 1;

  uint64_t bytes() const { return uint64_t(width) * height * channels; }
};

struct EmbedOptions {
  KPolicy policy{};
  int threads = 1;              // window-channel pairs processed in parallel
  bool keep_real_planes = false; // also return the pre-rounding stego planes
};

struct EmbedResult {
  PlaneImage stego;
  RealImage stego_real; // populated iff keep_real_planes
  StegoKey key;
  EmbedReport report;
};

// Capacity plan for a cover under a policy: per-window records plus the
// payload slot offset of each window (prefix sums over 64-k^2). Window
// order is channel-major, then row-major over windows; parallel execution
// cannot change the assignment.
struct EmbedPlan {
  std::vector<WindowRecord> records;
  std::vector<uint64_t> slot_offset; // records.size()+1 entries
  uint64_t total_slots = 0;
};

EmbedPlan plan_embed(const PlaneImage& cover, const KPolicy& policy,
                     int threads = 1);

// Embeds raw payload bytes. Throws CapacityError when payload.size()
// exceeds the plan's slot count.
EmbedResult embed_payload(const PlaneImage& cover,
                          std::span<const uint8_t> payload,
                          const SecretGeometry& geom,
                          const EmbedOptions& opts = {});

// Whole-image embed: the secret is flattened row-major with channels
// interleaved per pixel, then spread across the L-regions of every window.
EmbedResult embed_image(const PlaneImage& cover, const PlaneImage& secret,
                        const EmbedOptions& opts = {});

// Inverse pipeline: re-transform each window, read the L-region slots in
// embed order, denormalize with the window's nf, and reassemble the secret
// image of the key's recorded geometry.
PlaneImage extract_image(const PlaneImage& stego, const StegoKey& key,
                         int threads = 1);

// Same, but from real-valued planes (the lossless-coefficient path that
// skips 8-bit rounding).
PlaneImage extract_image(const RealImage& stego, const StegoKey& key,
                         int threads = 1);

// Flattens a secret image into the payload byte order used by embed_image.
std::vector<uint8_t> flatten_secret(const PlaneImage& secret);

} // namespace adks
