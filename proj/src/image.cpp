#include "adks/image.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <string>

#include <png.h>

#include "adks/errors.hpp"

namespace adks {

PlaneImage PlaneImage::make(uint32_t w, uint32_t h, uint32_t c, uint8_t fill) {
  PlaneImage img;
  img.width = w;
  img.height = h;
  img.channels = c;
  img.planes.assign(c, std::vector<uint8_t>(size_t(w) * h, fill));
  return img;
}

RealImage RealImage::make(uint32_t w, uint32_t h, uint32_t c) {
  RealImage img;
  img.width = w;
  img.height = h;
  img.channels = c;
  img.planes.assign(c, std::vector<double>(size_t(w) * h, 0.0));
  return img;
}

void validate(const PlaneImage& img) {
  if (img.channels != 1 && img.channels != 3)
    throw GeometryError("image must have 1 or 3 channels, got " +
                        std::to_string(img.channels));
  if (img.planes.size() != img.channels)
    throw GeometryError("plane count does not match channel count");
  for (const auto& p : img.planes)
    if (p.size() != img.pixel_count())
      throw GeometryError("plane size does not match width*height");
}

void check_windowable(const PlaneImage& img) {
  if (img.width % 8 != 0)
    throw GeometryError("width " + std::to_string(img.width) +
                        " is not a multiple of 8");
  if (img.height % 8 != 0)
    throw GeometryError("height " + std::to_string(img.height) +
                        " is not a multiple of 8");
}

PlaneImage crop_to_multiple_of_8(const PlaneImage& img) {
  const uint32_t w = img.width - img.width % 8;
  const uint32_t h = img.height - img.height % 8;
  if (w == img.width && h == img.height) return img;
  PlaneImage out = PlaneImage::make(w, h, img.channels);
  for (uint32_t ch = 0; ch < img.channels; ++ch)
    for (uint32_t y = 0; y < h; ++y)
      std::copy_n(img.planes[ch].begin() + size_t(y) * img.width, w,
                  out.planes[ch].begin() + size_t(y) * w);
  return out;
}

namespace {

// ---- PNM (P5/P6) ----

int pnm_next_token(std::istream& in, std::string& tok) {
  tok.clear();
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (!std::isspace(c)) break;
  }
  if (c == EOF) return -1;
  do {
    tok.push_back(char(c));
  } while ((c = in.get()) != EOF && !std::isspace(c));
  return 0;
}

uint32_t pnm_read_uint(std::istream& in, const char* what) {
  std::string tok;
  if (pnm_next_token(in, tok) != 0 || tok.empty() || tok.size() > 9 ||
      !std::all_of(tok.begin(), tok.end(),
                   [](unsigned char ch) { return std::isdigit(ch); }))
    throw FormatError(std::string("malformed PNM header: bad ") + what);
  return uint32_t(std::stoul(tok));
}

PlaneImage load_pnm(std::ifstream& in, const std::filesystem::path& path) {
  char m0 = 0, m1 = 0;
  in.get(m0);
  in.get(m1);
  const uint32_t channels = (m1 == '6') ? 3 : 1;
  const uint32_t w = pnm_read_uint(in, "width");
  const uint32_t h = pnm_read_uint(in, "height");
  const uint32_t maxval = pnm_read_uint(in, "maxval");
  if (maxval > 255)
    throw FormatError("16-bit PNM not supported: " + path.string());
  if (maxval == 0) throw FormatError("malformed PNM header: maxval 0");
  if (uint64_t(w) * h > (uint64_t(1) << 30))
    throw FormatError("PNM dimensions out of range: " + path.string());
  // header ends with exactly one whitespace byte, already consumed by the
  // token reader

  PlaneImage img = PlaneImage::make(w, h, channels);
  std::vector<uint8_t> row(size_t(w) * channels);
  for (uint32_t y = 0; y < h; ++y) {
    in.read(reinterpret_cast<char*>(row.data()), std::streamsize(row.size()));
    if (size_t(in.gcount()) != row.size())
      throw FormatError("truncated PNM data: " + path.string());
    for (uint32_t x = 0; x < w; ++x)
      for (uint32_t ch = 0; ch < channels; ++ch)
        img.planes[ch][size_t(y) * w + x] = row[size_t(x) * channels + ch];
  }
  return img;
}

void save_pnm(const PlaneImage& img, const std::filesystem::path& path,
              bool color) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write file: " + path.string());
  out << (color ? "P6" : "P5") << "\n"
      << img.width << " " << img.height << "\n255\n";
  std::vector<uint8_t> row(size_t(img.width) * img.channels);
  for (uint32_t y = 0; y < img.height; ++y) {
    for (uint32_t x = 0; x < img.width; ++x)
      for (uint32_t ch = 0; ch < img.channels; ++ch)
        row[size_t(x) * img.channels + ch] =
            img.planes[ch][size_t(y) * img.width + x];
    out.write(reinterpret_cast<const char*>(row.data()),
              std::streamsize(row.size()));
  }
  out.flush();
  if (!out) throw FormatError("write failed: " + path.string());
}

// ---- PNG via libpng ----

// Buffers live here so they are released even when libpng longjmps out of
// a read/write call.
struct PngReader {
  FILE* fp = nullptr;
  png_structp png = nullptr;
  png_infop info = nullptr;
  std::vector<uint8_t> raw;
  std::vector<png_bytep> rows;
  ~PngReader() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    if (fp) std::fclose(fp);
  }
};

PlaneImage load_png(const std::filesystem::path& path) {
  PngReader r;
  r.fp = std::fopen(path.string().c_str(), "rb");
  if (!r.fp) throw FormatError("cannot open file: " + path.string());
  r.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                 nullptr);
  if (!r.png) throw FormatError("libpng init failed");
  r.info = png_create_info_struct(r.png);
  if (!r.info) throw FormatError("libpng init failed");
  if (setjmp(png_jmpbuf(r.png)))
    throw FormatError("invalid PNG data: " + path.string());

  png_init_io(r.png, r.fp);
  png_read_info(r.png, r.info);

  const png_uint_32 w = png_get_image_width(r.png, r.info);
  const png_uint_32 h = png_get_image_height(r.png, r.info);
  const int depth = png_get_bit_depth(r.png, r.info);
  const int color = png_get_color_type(r.png, r.info);

  if (depth == 16)
    throw FormatError("16-bit PNG not supported: " + path.string());
  if (color == PNG_COLOR_TYPE_GRAY_ALPHA || color == PNG_COLOR_TYPE_RGB_ALPHA ||
      png_get_valid(r.png, r.info, PNG_INFO_tRNS))
    throw FormatError("PNG with alpha not supported: " + path.string());

  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(r.png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8)
    png_set_expand_gray_1_2_4_to_8(r.png);
  png_set_interlace_handling(r.png);
  png_read_update_info(r.png, r.info);

  const uint32_t channels = png_get_channels(r.png, r.info);
  if (channels != 1 && channels != 3)
    throw FormatError("unsupported PNG channel layout: " + path.string());

  r.raw.resize(size_t(w) * h * channels);
  r.rows.resize(h);
  for (uint32_t y = 0; y < h; ++y)
    r.rows[y] = r.raw.data() + size_t(y) * w * channels;
  png_read_image(r.png, r.rows.data());
  png_read_end(r.png, nullptr);

  PlaneImage img = PlaneImage::make(w, h, channels);
  for (uint32_t y = 0; y < h; ++y)
    for (uint32_t x = 0; x < w; ++x)
      for (uint32_t ch = 0; ch < channels; ++ch)
        img.planes[ch][size_t(y) * w + x] =
            r.raw[(size_t(y) * w + x) * channels + ch];
  return img;
}

struct PngWriter {
  FILE* fp = nullptr;
  png_structp png = nullptr;
  png_infop info = nullptr;
  std::vector<uint8_t> raw;
  std::vector<png_bytep> rows;
  ~PngWriter() {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    if (fp) std::fclose(fp);
  }
};

void save_png(const PlaneImage& img, const std::filesystem::path& path) {
  PngWriter w;
  w.fp = std::fopen(path.string().c_str(), "wb");
  if (!w.fp) throw FormatError("cannot write file: " + path.string());
  w.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                  nullptr);
  if (!w.png) throw FormatError("libpng init failed");
  w.info = png_create_info_struct(w.png);
  if (!w.info) throw FormatError("libpng init failed");

  w.raw.resize(size_t(img.width) * img.height * img.channels);
  for (uint32_t y = 0; y < img.height; ++y)
    for (uint32_t x = 0; x < img.width; ++x)
      for (uint32_t ch = 0; ch < img.channels; ++ch)
        w.raw[(size_t(y) * img.width + x) * img.channels + ch] =
            img.planes[ch][size_t(y) * img.width + x];
  w.rows.resize(img.height);
  for (uint32_t y = 0; y < img.height; ++y)
    w.rows[y] = w.raw.data() + size_t(y) * img.width * img.channels;

  if (setjmp(png_jmpbuf(w.png)))
    throw FormatError("PNG write failed: " + path.string());

  png_init_io(w.png, w.fp);
  png_set_IHDR(w.png, w.info, img.width, img.height, 8,
               img.channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(w.png, w.info);
  png_write_image(w.png, w.rows.data());
  png_write_end(w.png, w.info);
  if (std::fflush(w.fp) != 0)
    throw FormatError("write failed: " + path.string());
}

std::string lower_ext(const std::filesystem::path& path) {
  std::string e = path.extension().string();
  std::transform(e.begin(), e.end(), e.begin(),
                 [](unsigned char c) { return char(std::tolower(c)); });
  return e;
}

} // namespace

PlaneImage load_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open file: " + path.string());
  unsigned char sig[8] = {0};
  in.read(reinterpret_cast<char*>(sig), 8);
  const size_t got = size_t(in.gcount());
  in.clear();
  in.seekg(0);

  if (got >= 2 && sig[0] == 0xFF && sig[1] == 0xD8)
    throw FormatError("lossy container (JPEG) not supported: " +
                      path.string());
  if (got >= 2 && sig[0] == 'P' && (sig[1] == '5' || sig[1] == '6'))
    return load_pnm(in, path);
  if (got >= 8 && png_sig_cmp(sig, 0, 8) == 0) {
    in.close();
    return load_png(path);
  }
  throw FormatError("unsupported image format: " + path.string());
}

void save_image(const PlaneImage& img, const std::filesystem::path& path) {
  validate(img);
  const std::string ext = lower_ext(path);
  if (ext == ".jpg" || ext == ".jpeg")
    throw FormatError("lossy container (JPEG) rejected for output: " +
                      path.string());
  if (ext == ".pgm") {
    if (img.channels != 1)
      throw FormatError("PGM holds a single channel; image has 3");
    save_pnm(img, path, false);
  } else if (ext == ".ppm") {
    if (img.channels != 3)
      throw FormatError("PPM holds 3 channels; image has 1");
    save_pnm(img, path, true);
  } else if (ext == ".png") {
    save_png(img, path);
  } else {
    throw FormatError("unsupported output format: " + path.string());
  }
}

} // namespace adks
