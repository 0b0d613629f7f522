#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace adks {

// An image as per-channel 8-bit planes, row-major. Channels are stored in
// file order (R,G,B for color) and never converted to another color space.
struct PlaneImage {
  uint32_t width = 0;
  uint32_t height = 0;
  uint32_t channels = 1; // 1 or 3
  std::vector<std::vector<uint8_t>> planes;

  static PlaneImage make(uint32_t w, uint32_t h, uint32_t c, uint8_t fill = 0);

  uint8_t at(uint32_t ch, uint32_t x, uint32_t y) const {
    return planes[ch][size_t(y) * width + x];
  }
  void set(uint32_t ch, uint32_t x, uint32_t y, uint8_t v) {
    planes[ch][size_t(y) * width + x] = v;
  }
  size_t pixel_count() const { return size_t(width) * height; }
  size_t sample_count() const { return pixel_count() * channels; }
  bool same_geometry(const PlaneImage& o) const {
    return width == o.width && height == o.height && channels == o.channels;
  }
  bool operator==(const PlaneImage&) const = default;
};

// Real-valued planes, used for the stego image before 8-bit rounding.
struct RealImage {
  uint32_t width = 0;
  uint32_t height = 0;
  uint32_t channels = 1;
  std::vector<std::vector<double>> planes;

  static RealImage make(uint32_t w, uint32_t h, uint32_t c);
};

// Throws GeometryError/FormatError when invariants are broken.
void validate(const PlaneImage& img);

// Lossless loaders/savers. Supported: PGM (P5), PPM (P6), PNG 8-bit
// gray/RGB. Lossy containers (JPEG) are rejected outright.
PlaneImage load_image(const std::filesystem::path& path);
void save_image(const PlaneImage& img, const std::filesystem::path& path);

// Succeeds iff width and height are both multiples of 8; the error names
// the offending axis.
void check_windowable(const PlaneImage& img);

// Trims right/bottom edges down to multiples of 8.
PlaneImage crop_to_multiple_of_8(const PlaneImage& img);

} // namespace adks
