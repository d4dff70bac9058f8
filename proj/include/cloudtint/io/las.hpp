// SPDX-License-Identifier: Apache-2.0

// LAS 1.2-1.4, point data record formats 0-3. Coordinates are stored as
// scaled int32 values: world = offset + scale * stored.

#pragma once

#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "cloudtint/io/byte_stream.hpp"
#include "cloudtint/io/format.hpp"
#include "cloudtint/io/text_formats.hpp"

namespace cloudtint::io {

namespace las {

inline constexpr std::size_t kHeaderSize12 = 227;
inline constexpr std::size_t kHeaderSizeMin = 227;

inline std::size_t record_length(int format) {
  switch (format) {
    case 0: return 20;
    case 1: return 28;
    case 2: return 26;
    case 3: return 34;
    default: return 0;
  }
}

inline bool format_has_rgb(int format) { return format == 2 || format == 3; }

inline std::uint16_t widen(std::uint8_t v) { return static_cast<std::uint16_t>(v * 257u); }
inline std::uint8_t narrow(std::uint16_t v) { return static_cast<std::uint8_t>(v >> 8); }

struct Header {
  std::uint8_t version_major = 1;
  std::uint8_t version_minor = 2;
  std::uint16_t header_size = kHeaderSize12;
  std::uint32_t point_offset = kHeaderSize12;
  int point_format = 0;
  std::uint16_t record_length = 20;
  std::uint64_t count = 0;
  Vec3 scale{1e-4, 1e-4, 1e-4};
  Vec3 offset;
  Bounds3 bounds;
};

}  // namespace las

class LasReader final : public PointReader {
 public:
  explicit LasReader(std::unique_ptr<std::istream> in) : src_(std::move(in)) {
    const char* h = src_.read_exact(las::kHeaderSizeMin);
    if (std::string_view(h, 4) != "LASF") throw Error(ErrorCode::HeaderMismatch, "LAS file must start with 'LASF'");
    hdr_.version_major = static_cast<std::uint8_t>(h[24]);
    hdr_.version_minor = static_cast<std::uint8_t>(h[25]);
    if (hdr_.version_major != 1 || hdr_.version_minor > 4)
      throw Error(ErrorCode::ParseError, "unsupported LAS version " + std::to_string(hdr_.version_major) + "." +
                                             std::to_string(hdr_.version_minor));
    hdr_.header_size = load_le<std::uint16_t>(h + 94);
    hdr_.point_offset = load_le<std::uint32_t>(h + 96);
    const std::uint8_t raw_format = static_cast<std::uint8_t>(h[104]);
    if (raw_format & 0x80) throw Error(ErrorCode::CodecUnavailable, "compressed LAS points (LAZ) are not supported");
    hdr_.point_format = raw_format & 0x3f;
    hdr_.record_length = load_le<std::uint16_t>(h + 105);
    hdr_.count = load_le<std::uint32_t>(h + 107);
    for (std::size_t i = 0; i < 3; ++i) {
      hdr_.scale[i] = load_le<double>(h + 131 + 8 * i);
      hdr_.offset[i] = load_le<double>(h + 155 + 8 * i);
      hdr_.bounds.max[i] = load_le<double>(h + 179 + 16 * i);
      hdr_.bounds.min[i] = load_le<double>(h + 187 + 16 * i);
    }
    if (hdr_.header_size < las::kHeaderSizeMin || hdr_.point_offset < hdr_.header_size)
      throw Error(ErrorCode::ParseError, "inconsistent LAS header sizes");
    std::uint64_t consumed = las::kHeaderSizeMin;
    if (hdr_.version_minor >= 4 && hdr_.header_size >= 375) {
      const char* ext = src_.read_exact(375 - las::kHeaderSizeMin);
      consumed = 375;
      const std::uint64_t count64 = load_le<std::uint64_t>(ext + (247 - las::kHeaderSizeMin));
      if (hdr_.count == 0) hdr_.count = count64;
    }
    const std::size_t min_len = las::record_length(hdr_.point_format);
    if (min_len == 0)
      throw Error(ErrorCode::UnsupportedPointRecord,
                  "LAS point data record format " + std::to_string(hdr_.point_format) + " is not supported");
    if (hdr_.record_length < min_len) throw Error(ErrorCode::ParseError, "LAS point record length too small");
    src_.skip(hdr_.point_offset - consumed);  // rest of header plus VLRs

    info_.format = {FormatKind::las, Encoding::binary_little_endian, las::format_has_rgb(hdr_.point_format), false};
    info_.count = hdr_.count;
    info_.bounds = hdr_.bounds;
    info_.narrowed_16bit_color = info_.format.has_color;
  }

  const StreamInfo& info() const override { return info_; }
  const las::Header& header() const noexcept { return hdr_; }

  std::size_t read(PointCloud& batch, std::size_t max_points) override {
    batch.clear();
    const std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(hdr_.count - produced_, max_points));
    batch.reserve(n);
    const std::size_t rgb_at = hdr_.point_format == 2 ? 20 : 28;
    for (std::size_t i = 0; i < n; ++i) {
      const char* rec = src_.read_exact(hdr_.record_length);
      Vec3 p;
      for (std::size_t k = 0; k < 3; ++k)
        p[k] = hdr_.offset[k] + hdr_.scale[k] * static_cast<double>(load_le<std::int32_t>(rec + 4 * k));
      Rgb c{};
      if (info_.format.has_color)
        c = {las::narrow(load_le<std::uint16_t>(rec + rgb_at)), las::narrow(load_le<std::uint16_t>(rec + rgb_at + 2)),
             las::narrow(load_le<std::uint16_t>(rec + rgb_at + 4))};
      batch.push_back(p, c);
    }
    produced_ += n;
    return n;
  }

 private:
  ByteSource src_;
  las::Header hdr_;
  StreamInfo info_;
  std::uint64_t produced_ = 0;
};

/// Writes LAS 1.2 with point format 2 (colored) or 0. The offset is the
/// component-wise minimum of the declared bounds, so begin() needs bounds.
class LasWriter final : public detail::CheckedWriter {
 public:
  LasWriter(std::ostream& out, double scale) : CheckedWriter(out), scale_(scale) {
    if (!(scale > 0.0) || !std::isfinite(scale)) throw Error(ErrorCode::InvalidArgument, "LAS scale must be positive");
  }

  bool needs_bounds() const override { return true; }

  void begin(const WriteHeader& h) override {
    if (!h.bounds) throw Error(ErrorCode::InvalidArgument, "LAS output requires point bounds");
    if (h.count > std::numeric_limits<std::uint32_t>::max())
      throw Error(ErrorCode::InvalidArgument, "LAS 1.2 holds at most 2^32-1 points");
    start(h);
    format_ = h.has_color ? 2 : 0;
    offset_ = h.bounds->min;
    // Header bounds are the quantized bounds so that re-encoding is stable.
    Bounds3 qb;
    for (std::size_t k = 0; k < 3; ++k) {
      qb.min[k] = dequantize(quantize(h.bounds->min[k], k), k);
      qb.max[k] = dequantize(quantize(h.bounds->max[k], k), k);
    }

    char hdr[las::kHeaderSize12] = {};
    std::memcpy(hdr, "LASF", 4);
    hdr[24] = 1;
    hdr[25] = 2;
    copy_padded(hdr + 26, "OTHER", 32);
    copy_padded(hdr + 58, "cloudtint", 32);
    store_le<std::uint16_t>(hdr + 94, las::kHeaderSize12);
    store_le<std::uint32_t>(hdr + 96, las::kHeaderSize12);
    store_le<std::uint32_t>(hdr + 100, 0);
    hdr[104] = static_cast<char>(format_);
    store_le<std::uint16_t>(hdr + 105, static_cast<std::uint16_t>(las::record_length(format_)));
    store_le<std::uint32_t>(hdr + 107, static_cast<std::uint32_t>(h.count));
    store_le<std::uint32_t>(hdr + 111, static_cast<std::uint32_t>(h.count));  // all single returns
    for (std::size_t k = 0; k < 3; ++k) {
      store_le<double>(hdr + 131 + 8 * k, scale_);
      store_le<double>(hdr + 155 + 8 * k, offset_[k]);
      store_le<double>(hdr + 179 + 16 * k, qb.max[k]);
      store_le<double>(hdr + 187 + 16 * k, qb.min[k]);
    }
    sink_.put(std::string_view(hdr, sizeof(hdr)));
  }

  void write(const PointCloud& batch) override {
    account(batch.size());
    const auto pos = batch.positions();
    const auto col = batch.colors();
    const std::size_t len = las::record_length(format_);
    for (std::size_t i = 0; i < batch.size(); ++i) {
      char rec[26] = {};
      for (std::size_t k = 0; k < 3; ++k) store_le<std::int32_t>(rec + 4 * k, quantize(pos[i][k], k));
      rec[14] = 0x09;  // return 1 of 1
      if (format_ == 2) {
        store_le<std::uint16_t>(rec + 20, las::widen(col[i].r));
        store_le<std::uint16_t>(rec + 22, las::widen(col[i].g));
        store_le<std::uint16_t>(rec + 24, las::widen(col[i].b));
      }
      sink_.put(std::string_view(rec, len));
    }
  }

 private:
  std::int32_t quantize(double v, std::size_t axis) const {
    const double q = std::nearbyint((v - offset_[axis]) / scale_);
    if (!(q >= std::numeric_limits<std::int32_t>::min() && q <= std::numeric_limits<std::int32_t>::max()))
      throw Error(ErrorCode::RangeError, "coordinate does not fit the LAS int32 range at scale " + std::to_string(scale_));
    return static_cast<std::int32_t>(q);
  }
  double dequantize(std::int32_t v, std::size_t axis) const { return offset_[axis] + scale_ * static_cast<double>(v); }

  static void copy_padded(char* dst, std::string_view s, std::size_t n) {
    std::memcpy(dst, s.data(), std::min(n, s.size()));
  }

  double scale_;
  int format_ = 0;
  Vec3 offset_;
};

}  // namespace cloudtint::io
