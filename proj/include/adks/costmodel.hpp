#pragma once

#include <cstdint>
#include <vector>

namespace adks {

// Operation counts for a fast N x N 2D DCT, N a power of two >= 8:
//   multiplications: N^2/2 * log2(N) + N^2/3 - 2N + 8/3
//   additions:      5N^2/2 * log2(N) + N^2/3 - 6N + 62/3
// Both are exact integers for such N. Throws UsageError otherwise.
uint64_t dct_mults(uint32_t n);
uint64_t dct_adds(uint32_t n);

struct CostRow {
  uint32_t window_size = 0;
  uint64_t windows = 0;
  uint64_t adds_per_window = 0;
  uint64_t mults_per_window = 0;
  uint64_t total_adds = 0;
  uint64_t total_mults = 0;
};

struct CostTable {
  uint32_t image_size = 0;
  bool corrected_windows = false;
  std::vector<CostRow> rows; // window sizes 64, 128, 256
  uint64_t total_adds = 0;
  uint64_t total_mults = 0;
};

// Extra transform cost a multi-window-size scheme pays on a square image.
// The published convention counts image_size/N windows per row; the
// corrected mode counts the geometric (image_size/N)^2 tiling instead.
// image_size must be a positive multiple of 256.
CostTable extra_cost_table(uint32_t image_size, bool corrected_windows = false);

} // namespace adks
