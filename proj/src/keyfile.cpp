#include "adks/keyfile.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "adks/errors.hpp"

namespace adks {

namespace {

constexpr char kMagic[4] = {'A', 'D', 'K', 'S'};
constexpr uint8_t kVersion = 0x01;
constexpr size_t kHeaderSize = 24;

void put_u32(std::vector<uint8_t>& buf, uint32_t v) {
  buf.push_back(uint8_t(v));
  buf.push_back(uint8_t(v >> 8));
  buf.push_back(uint8_t(v >> 16));
  buf.push_back(uint8_t(v >> 24));
}

uint32_t get_u32(const uint8_t* p) {
  return uint32_t(p[0]) | uint32_t(p[1]) << 8 | uint32_t(p[2]) << 16 |
         uint32_t(p[3]) << 24;
}

} // namespace

void validate_key(const StegoKey& key) {
  if (key.cover_width % 8 != 0 || key.cover_height % 8 != 0)
    throw KeyError("cover dimensions are not multiples of 8");
  if (key.cover_channels != 1 && key.cover_channels != 3)
    throw KeyError("cover channel count must be 1 or 3");
  if (key.secret_channels != 1 && key.secret_channels != 3)
    throw KeyError("secret channel count must be 1 or 3");
  if (key.k_min < 1 || key.k_min > 8)
    throw KeyError("k_min out of range 1..8");
  if (key.records.size() != key.expected_records())
    throw KeyError("record count " + std::to_string(key.records.size()) +
                   " does not match geometry (expected " +
                   std::to_string(key.expected_records()) + ")");
  for (size_t i = 0; i < key.records.size(); ++i) {
    const auto& r = key.records[i];
    if (r.k < 1 || r.k > 8)
      throw KeyError("record " + std::to_string(i) + ": k out of range");
    if (r.nf < 1)
      throw KeyError("record " + std::to_string(i) + ": nf must be >= 1");
    if (r.k == 8 && r.nf != 1)
      throw KeyError("record " + std::to_string(i) +
                     ": nf must be 1 when k=8");
  }
}

void write_key(const StegoKey& key, const std::filesystem::path& path) {
  validate_key(key);
  std::vector<uint8_t> buf;
  buf.reserve(kHeaderSize + 3 * key.records.size());
  buf.insert(buf.end(), kMagic, kMagic + 4);
  buf.push_back(kVersion);
  buf.push_back(key.cover_channels);
  put_u32(buf, key.cover_width);
  put_u32(buf, key.cover_height);
  buf.push_back(key.k_min);
  buf.push_back(key.secret_channels);
  put_u32(buf, key.secret_width);
  put_u32(buf, key.secret_height);
  for (const auto& r : key.records) {
    buf.push_back(r.k);
    buf.push_back(uint8_t(r.nf));
    buf.push_back(uint8_t(r.nf >> 8));
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write key file: " + path.string());
  out.write(reinterpret_cast<const char*>(buf.data()),
            std::streamsize(buf.size()));
  out.flush();
  if (!out) throw FormatError("key write failed: " + path.string());
}

StegoKey read_key(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw KeyError("cannot open key file: " + path.string());
  std::vector<uint8_t> buf((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());

  if (buf.size() < kHeaderSize) throw KeyError("truncated key file header");
  if (std::memcmp(buf.data(), kMagic, 4) != 0) throw KeyError("bad magic");
  if (buf[4] != kVersion)
    throw KeyError("unsupported key version " + std::to_string(buf[4]));

  StegoKey key;
  key.cover_channels = buf[5];
  key.cover_width = get_u32(&buf[6]);
  key.cover_height = get_u32(&buf[10]);
  key.k_min = buf[14];
  key.secret_channels = buf[15];
  key.secret_width = get_u32(&buf[16]);
  key.secret_height = get_u32(&buf[20]);

  const size_t body = buf.size() - kHeaderSize;
  if (body % 3 != 0) throw KeyError("truncated record section");
  const size_t count = body / 3;
  key.records.resize(count);
  for (size_t i = 0; i < count; ++i) {
    const uint8_t* p = &buf[kHeaderSize + 3 * i];
    key.records[i].k = p[0];
    key.records[i].nf = uint16_t(p[1]) | uint16_t(p[2]) << 8;
  }

  validate_key(key);
  return key;
}

} // namespace adks
