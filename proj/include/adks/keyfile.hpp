#pragma once

#include <filesystem>

#include "adks/key.hpp"

namespace adks {

// Binary sidecar format, little-endian:
//   0  magic "ADKS" (4 bytes)
//   4  version = 0x01 (1 byte)
//   5  cover_channels (1 byte)
//   6  cover_width (u32)
//  10  cover_height (u32)
//  14  k_min (1 byte)
//  15  secret_channels (1 byte)
//  16  secret_width (u32)
//  20  secret_height (u32)
//  24  records, 3 bytes each: k (u8), nf (u16), channel-major then
//      window row-major
// Total size: 24 + 3 * record_count bytes.

void write_key(const StegoKey& key, const std::filesystem::path& path);
StegoKey read_key(const std::filesystem::path& path);

// Structural checks shared by both directions; throws KeyError.
void validate_key(const StegoKey& key);

} // namespace adks
