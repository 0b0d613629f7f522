#include "adks/costmodel.hpp"

#include <string>

#include "adks/errors.hpp"

namespace adks {

namespace {

bool is_pow2(uint32_t n) { return n != 0 && (n & (n - 1)) == 0; }

uint32_t log2_exact(uint32_t n) {
  uint32_t l = 0;
  while (n > 1) {
    n >>= 1;
    ++l;
  }
  return l;
}

void check_size(uint32_t n) {
  if (!is_pow2(n) || n < 8)
    throw UsageError("window size must be a power of two >= 8, got " +
                     std::to_string(n));
}

} // namespace

uint64_t dct_mults(uint32_t n) {
  check_size(n);
  const uint64_t n2 = uint64_t(n) * n;
  // n^2/2*log2(n) + (n^2+8)/3 - 2n; both divisions are exact for these n
  return n2 / 2 * log2_exact(n) + (n2 + 8) / 3 - 2 * uint64_t(n);
}

uint64_t dct_adds(uint32_t n) {
  check_size(n);
  const uint64_t n2 = uint64_t(n) * n;
  return 5 * (n2 / 2) * log2_exact(n) + (n2 + 62) / 3 - 6 * uint64_t(n);
}

CostTable extra_cost_table(uint32_t image_size, bool corrected_windows) {
  if (image_size == 0 || image_size % 256 != 0)
    throw UsageError("image size must be a positive multiple of 256, got " +
                     std::to_string(image_size));
  CostTable table;
  table.image_size = image_size;
  table.corrected_windows = corrected_windows;
  for (uint32_t n : {64u, 128u, 256u}) {
    CostRow row;
    row.window_size = n;
    const uint64_t linear = image_size / n;
    row.windows = corrected_windows ? linear * linear : linear;
    row.adds_per_window = dct_adds(n);
    row.mults_per_window = dct_mults(n);
    row.total_adds = row.windows * row.adds_per_window;
    row.total_mults = row.windows * row.mults_per_window;
    table.total_adds += row.total_adds;
    table.total_mults += row.total_mults;
    table.rows.push_back(row);
  }
  return table;
}

} // namespace adks
