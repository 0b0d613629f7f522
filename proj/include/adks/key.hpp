#pragma once

#include <cstdint>
#include <vector>

namespace adks {

// Per-window side information: dominant block size K and normalization
// factor NF. Both are required for extraction.
struct WindowRecord {
  uint8_t k = 1;   // 1..8; k=8 means the window carries no payload
  uint16_t nf = 1; // >= 1; fixed to 1 when k=8
  bool operator==(const WindowRecord&) const = default;
};

// Embedding policy: floor on the dominant block size. k_min=1 is the fully
// adaptive mode.
struct KPolicy {
  int k_min = 1; // 1..8

  bool adaptive() const { return k_min <= 1; }
};

// The extraction key that travels with the stego image: geometry header
// plus one WindowRecord per window-channel pair, ordered channel-major then
// window row-major.
struct StegoKey {
  uint32_t cover_width = 0;
  uint32_t cover_height = 0;
  uint8_t cover_channels = 1;
  uint8_t k_min = 1;
  uint32_t secret_width = 0;
  uint32_t secret_height = 0;
  uint8_t secret_channels = 1;
  std::vector<WindowRecord> records;

  size_t expected_records() const {
    return size_t(cover_width / 8) * (cover_height / 8) * cover_channels;
  }
  bool operator==(const StegoKey&) const = default;
};

} // namespace adks
