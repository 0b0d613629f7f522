#include "adks/stego.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "adks/errors.hpp"

namespace adks {

namespace {

// Rounding mode used throughout the pipeline: half away from zero.
int64_t round_half_away(double x) { return std::llround(x); }

void run_parallel(size_t n, int threads, const auto& body) {
  if (threads < 1) threads = 1;
  const size_t nt = std::min<size_t>(size_t(threads), n ? n : 1);
  if (nt <= 1) {
    for (size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mu;
  const size_t chunk = (n + nt - 1) / nt;
  for (size_t t = 0; t < nt; ++t) {
    const size_t begin = t * chunk;
    const size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        for (size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::scoped_lock lk(err_mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

void validate_policy(const KPolicy& policy) {
  if (policy.k_min < 1 || policy.k_min > 8)
    throw UsageError("k_min must be in 1..8, got " +
                     std::to_string(policy.k_min));
}

PixelWindow read_window(const std::vector<uint8_t>& plane, uint32_t width,
                        uint32_t wx, uint32_t wy) {
  PixelWindow w;
  for (int r = 0; r < 8; ++r) {
    const size_t base = (size_t(wy) * 8 + r) * width + size_t(wx) * 8;
    for (int c = 0; c < 8; ++c) w.at(r, c) = plane[base + c];
  }
  return w;
}

struct WindowAddr {
  uint32_t ch, wx, wy;
};

WindowAddr window_addr(size_t index, uint32_t wb, uint32_t hb) {
  const size_t per_channel = size_t(wb) * hb;
  WindowAddr a;
  a.ch = uint32_t(index / per_channel);
  const size_t wi = index % per_channel;
  a.wy = uint32_t(wi / wb);
  a.wx = uint32_t(wi % wb);
  return a;
}

} // namespace

const QuantMatrix& QuantMatrix::jpeg_q50() {
  static const QuantMatrix m{{
      16, 11, 10, 16, 24,  40,  51,  61,  //
      12, 12, 14, 19, 26,  58,  60,  55,  //
      14, 13, 16, 24, 40,  57,  69,  56,  //
      14, 17, 22, 29, 51,  87,  80,  62,  //
      18, 22, 37, 56, 68,  109, 103, 77,  //
      24, 35, 55, 64, 81,  104, 113, 92,  //
      49, 64, 78, 87, 103, 121, 120, 101, //
      72, 92, 95, 98, 112, 100, 103, 99,  //
  }};
  return m;
}

QuantizedWindow quantize(const CoeffWindow& c, const QuantMatrix& q) {
  QuantizedWindow out;
  for (int i = 0; i < 64; ++i) {
    if (q.q[i] < 1) throw UsageError("quantization divisors must be >= 1");
    out.d[i] = int32_t(round_half_away(c.c[i] / q.q[i]));
  }
  return out;
}

int dominant_block_size(const QuantizedWindow& d, const KPolicy& policy) {
  validate_policy(policy);
  // Largest fully non-zero top-left square; nested blocks make the scan
  // monotone. DC is retained even when it quantizes to zero.
  int k0 = 1;
  for (int k = 2; k <= 8; ++k) {
    bool full = true;
    for (int i = 0; i < k && full; ++i)
      for (int j = 0; j < k; ++j)
        if (d.at(i, j) == 0) {
          full = false;
          break;
        }
    if (!full) break;
    k0 = k;
  }
  return std::min(std::max(k0, policy.k_min), 8);
}

int compute_nf(const CoeffWindow& c, int k) {
  if (k < 1 || k > 8) throw UsageError("k must be in 1..8");
  if (k == 8) return 1;
  double m = 0.0;
  for (int u = 0; u < 8; ++u)
    for (int v = 0; v < 8; ++v)
      if (!(u < k && v < k)) m = std::max(m, std::abs(c.at(u, v)));
  if (m == 0.0) return 1;
  // 8-bit spatial input bounds coefficients by 8*255; anything bigger did
  // not come from this pipeline
  if (!(m < 1e9))
    throw Error("coefficient magnitude out of range for a normalization "
                "factor");
  return int(std::ceil(m));
}

int normalize_pixel(uint8_t si, int nf) {
  if (nf < 1) throw UsageError("nf must be >= 1");
  // round(si*nf/255) in exact integer arithmetic; si*nf/255 never lands on
  // an exact half, so half-up equals half-away here.
  return int((2 * int64_t(si) * nf + 255) / 510);
}

uint8_t denormalize_pixel(double nsi, int nf) {
  if (nf < 1) throw UsageError("nf must be >= 1");
  if (!std::isfinite(nsi)) return 0;
  int64_t code = round_half_away(nsi);
  code = std::clamp<int64_t>(code, 0, nf);
  const int64_t v = (510 * code + nf) / (2 * int64_t(nf));
  return uint8_t(std::min<int64_t>(v, 255));
}

EmbedWindowResult embed_window(const CoeffWindow& cover_c,
                               std::span<const uint8_t> payload,
                               const KPolicy& policy, const QuantMatrix& q) {
  const int k = dominant_block_size(quantize(cover_c, q), policy);
  const int nf = compute_nf(cover_c, k);
  if (nf > 0xFFFF)
    throw Error("normalization factor " + std::to_string(nf) +
                " exceeds the key record range");

  EmbedWindowResult res;
  res.rec = WindowRecord{uint8_t(k), uint16_t(nf)};
  res.modified = cover_c; // k x k corner stays verbatim
  size_t used = 0;
  for (int u = 0; u < 8; ++u) {
    for (int v = 0; v < 8; ++v) {
      if (u < k && v < k) continue;
      if (used < payload.size())
        res.modified.at(u, v) = normalize_pixel(payload[used++], nf);
      else
        res.modified.at(u, v) = 0.0;
    }
  }
  res.consumed = used;
  return res;
}

std::vector<uint8_t> flatten_secret(const PlaneImage& secret) {
  validate(secret);
  std::vector<uint8_t> bytes;
  bytes.reserve(secret.sample_count());
  for (size_t i = 0; i < secret.pixel_count(); ++i)
    for (uint32_t ch = 0; ch < secret.channels; ++ch)
      bytes.push_back(secret.planes[ch][i]);
  return bytes;
}

EmbedPlan plan_embed(const PlaneImage& cover, const KPolicy& policy,
                     int threads) {
  validate(cover);
  check_windowable(cover);
  validate_policy(policy);

  const uint32_t wb = cover.width / 8;
  const uint32_t hb = cover.height / 8;
  const size_t n = size_t(wb) * hb * cover.channels;
  const QuantMatrix& q = QuantMatrix::jpeg_q50();

  EmbedPlan plan;
  plan.records.resize(n);
  run_parallel(n, threads, [&](size_t i) {
    const WindowAddr a = window_addr(i, wb, hb);
    const CoeffWindow c =
        forward_dct(read_window(cover.planes[a.ch], cover.width, a.wx, a.wy));
    const int k = dominant_block_size(quantize(c, q), policy);
    plan.records[i] = WindowRecord{uint8_t(k), uint16_t(compute_nf(c, k))};
  });

  plan.slot_offset.resize(n + 1, 0);
  for (size_t i = 0; i < n; ++i) {
    const uint64_t slots = 64 - uint64_t(plan.records[i].k) * plan.records[i].k;
    plan.slot_offset[i + 1] = plan.slot_offset[i] + slots;
  }
  plan.total_slots = plan.slot_offset[n];
  return plan;
}

EmbedResult embed_payload(const PlaneImage& cover,
                          std::span<const uint8_t> payload,
                          const SecretGeometry& geom,
                          const EmbedOptions& opts) {
  if (payload.size() != geom.bytes())
    throw GeometryError("payload byte count does not match secret geometry");

  EmbedPlan plan = plan_embed(cover, opts.policy, opts.threads);
  if (payload.size() > plan.total_slots)
    throw CapacityError("capacity exceeded: required " +
                        std::to_string(payload.size()) +
                        " bytes, available " +
                        std::to_string(plan.total_slots) + " bytes");

  const uint32_t wb = cover.width / 8;
  const uint32_t hb = cover.height / 8;
  const size_t n = plan.records.size();
  const QuantMatrix& q = QuantMatrix::jpeg_q50();

  EmbedResult res;
  res.stego = PlaneImage::make(cover.width, cover.height, cover.channels);
  RealImage real = RealImage::make(cover.width, cover.height, cover.channels);

  run_parallel(n, opts.threads, [&](size_t i) {
    const WindowAddr a = window_addr(i, wb, hb);
    const CoeffWindow c =
        forward_dct(read_window(cover.planes[a.ch], cover.width, a.wx, a.wy));

    // Payload slots were pre-assigned by the plan's prefix sums, so the
    // execution order cannot reorder bytes.
    const uint64_t off = std::min<uint64_t>(plan.slot_offset[i], payload.size());
    const uint64_t end = std::min<uint64_t>(plan.slot_offset[i + 1], payload.size());
    const auto r = embed_window(c, payload.subspan(off, end - off),
                                opts.policy, q);
    const PixelWindow px = inverse_dct(r.modified);

    auto& rplane = real.planes[a.ch];
    auto& splane = res.stego.planes[a.ch];
    for (int row = 0; row < 8; ++row) {
      const size_t base =
          (size_t(a.wy) * 8 + row) * cover.width + size_t(a.wx) * 8;
      for (int col = 0; col < 8; ++col) {
        const double v = px.at(row, col);
        rplane[base + col] = v;
        splane[base + col] =
            uint8_t(std::clamp<int64_t>(round_half_away(v), 0, 255));
      }
    }
  });

  res.key.cover_width = cover.width;
  res.key.cover_height = cover.height;
  res.key.cover_channels = uint8_t(cover.channels);
  res.key.k_min = uint8_t(opts.policy.k_min);
  res.key.secret_width = geom.width;
  res.key.secret_height = geom.height;
  res.key.secret_channels = uint8_t(geom.channels);
  res.key.records = std::move(plan.records);

  res.report.capacity_bpp = capacity_bpp(res.key);
  res.report.mse = mse(cover, res.stego);
  res.report.psnr_db = psnr(cover, res.stego);
  res.report.payload_bytes_used = payload.size();
  for (const auto& rec : res.key.records) ++res.report.k_histogram[rec.k - 1];

  if (opts.keep_real_planes) res.stego_real = std::move(real);
  return res;
}

EmbedResult embed_image(const PlaneImage& cover, const PlaneImage& secret,
                        const EmbedOptions& opts) {
  validate(secret);
  const std::vector<uint8_t> payload = flatten_secret(secret);
  return embed_payload(
      cover, payload,
      SecretGeometry{secret.width, secret.height, secret.channels}, opts);
}

namespace {

template <class Plane>
PixelWindow read_window_generic(const Plane& plane, uint32_t width,
                                uint32_t wx, uint32_t wy) {
  PixelWindow w;
  for (int r = 0; r < 8; ++r) {
    const size_t base = (size_t(wy) * 8 + r) * width + size_t(wx) * 8;
    for (int c = 0; c < 8; ++c) w.at(r, c) = double(plane[base + c]);
  }
  return w;
}

template <class Img>
PlaneImage extract_generic(const Img& stego, const StegoKey& key,
                           int threads) {
  if (stego.width != key.cover_width || stego.height != key.cover_height ||
      stego.channels != key.cover_channels)
    throw GeometryError(
        "key does not match stego image: key covers " +
        std::to_string(key.cover_width) + "x" +
        std::to_string(key.cover_height) + "x" +
        std::to_string(key.cover_channels) + ", image is " +
        std::to_string(stego.width) + "x" + std::to_string(stego.height) +
        "x" + std::to_string(stego.channels));
  if (key.records.size() != key.expected_records())
    throw KeyError("key record count does not match its geometry");

  const uint32_t wb = stego.width / 8;
  const uint32_t hb = stego.height / 8;
  const size_t n = key.records.size();

  std::vector<uint64_t> offset(n + 1, 0);
  for (size_t i = 0; i < n; ++i) {
    const auto& rec = key.records[i];
    if (rec.k < 1 || rec.k > 8 || rec.nf < 1)
      throw KeyError("key record " + std::to_string(i) + " is invalid");
    offset[i + 1] = offset[i] + (64 - uint64_t(rec.k) * rec.k);
  }

  const uint64_t needed = uint64_t(key.secret_width) * key.secret_height *
                          key.secret_channels;
  if (needed > offset[n])
    throw KeyError("key demands more payload than the stego image holds");

  std::vector<uint8_t> bytes(needed);
  run_parallel(n, threads, [&](size_t i) {
    if (offset[i] >= needed) return; // window past the payload tail
    const WindowAddr a = window_addr(i, wb, hb);
    const CoeffWindow c = forward_dct(
        read_window_generic(stego.planes[a.ch], stego.width, a.wx, a.wy));
    const int k = key.records[i].k;
    const int nf = key.records[i].nf;
    uint64_t g = offset[i];
    for (int u = 0; u < 8 && g < needed; ++u) {
      for (int v = 0; v < 8 && g < needed; ++v) {
        if (u < k && v < k) continue;
        bytes[g++] = denormalize_pixel(c.at(u, v), nf);
      }
    }
  });

  PlaneImage secret = PlaneImage::make(key.secret_width, key.secret_height,
                                       key.secret_channels);
  for (size_t i = 0; i < secret.pixel_count(); ++i)
    for (uint32_t ch = 0; ch < secret.channels; ++ch)
      secret.planes[ch][i] = bytes[i * secret.channels + ch];
  return secret;
}

} // namespace

PlaneImage extract_image(const PlaneImage& stego, const StegoKey& key,
                         int threads) {
  validate(stego);
  return extract_generic(stego, key, threads);
}

PlaneImage extract_image(const RealImage& stego, const StegoKey& key,
                         int threads) {
  return extract_generic(stego, key, threads);
}

} // namespace adks
