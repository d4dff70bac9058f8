// SPDX-License-Identifier: Apache-2.0

// Whitespace-separated ASCII formats: xyz, xyzn, xyzrgb and count-headed pts.

#pragma once

#include <array>
#include <cmath>
#include <memory>
#include <string>

#include "cloudtint/io/byte_stream.hpp"
#include "cloudtint/io/format.hpp"

namespace cloudtint::io {

inline constexpr int kAsciiDecimals = 6;

namespace detail {

inline Error parse_error(const ByteSource& src, const std::string& msg) {
  return Error(ErrorCode::ParseError, msg, {src.line_number(), src.line_start(), std::nullopt});
}

inline double parse_coord(const ByteSource& src, std::string_view tok) {
  double v;
  if (!parse_number(tok, v) || !std::isfinite(v))
    throw parse_error(src, "invalid number '" + std::string(tok) + "'");
  return v;
}

inline bool has_fraction_syntax(std::string_view tok) {
  return tok.find_first_of(".eE") != std::string_view::npos;
}

/// Integer color channel in [0, 255]; real-valued tokens are rounded.
inline std::uint8_t parse_channel(const ByteSource& src, std::string_view tok, bool unit_scale) {
  double v;
  if (!parse_number(tok, v) || !std::isfinite(v))
    throw parse_error(src, "invalid color value '" + std::string(tok) + "'");
  if (unit_scale) v *= 255.0;
  if (v < 0.0 || v > 255.5) throw parse_error(src, "color value out of range '" + std::string(tok) + "'");
  return quantize_channel(v);
}

/// Enforces the declared point count at end() time and in write().
class CheckedWriter : public PointWriter {
 protected:
  explicit CheckedWriter(std::ostream& out) : sink_(out) {}

  void start(const WriteHeader& h, bool count_required = true) {
    if (count_required && !h.count_known)
      throw Error(ErrorCode::InvalidArgument, "this format needs the point count before the first record");
    header_ = h;
    started_ = true;
  }
  void account(std::size_t n) {
    if (!started_) throw Error(ErrorCode::InvalidArgument, "write() before begin()");
    written_ += n;
    if (header_.count_known && written_ > header_.count)
      throw Error(ErrorCode::InvalidArgument, "more points written than declared in the header");
  }

 public:
  std::uint64_t finish() override {
    if (header_.count_known && written_ != header_.count)
      throw Error(ErrorCode::InvalidArgument, "point count differs from the declared header count");
    sink_.flush();
    return sink_.bytes_written();
  }

 protected:
  ByteSink sink_;
  WriteHeader header_;
  std::uint64_t written_ = 0;
  bool started_ = false;
};

}  // namespace detail

/// Reader for xyz, xyzn and xyzrgb. Extra trailing columns are ignored.
class XyzReader final : public PointReader {
 public:
  XyzReader(std::unique_ptr<std::istream> in, FormatKind kind) : src_(std::move(in)) {
    info_.format = canonical_descriptor(kind);
    if (kind == FormatKind::xyzrgb) unit_scale_ = detect_unit_colors();
  }

  const StreamInfo& info() const override { return info_; }

  std::size_t read(PointCloud& batch, std::size_t max_points) override {
    batch.clear();
    const FormatKind kind = info_.format.kind;
    const std::size_t need = kind == FormatKind::xyz ? 3 : 6;
    std::array<std::string_view, 8> tok;
    std::string_view line;
    while (batch.size() < max_points && src_.next_line(line)) {
      if (is_blank(line)) continue;
      const std::size_t n = split_ws(line, tok.data(), tok.size());
      if (n < need)
        throw detail::parse_error(src_, "expected " + std::to_string(need) + " fields, found " + std::to_string(n));
      const Vec3 p{detail::parse_coord(src_, tok[0]), detail::parse_coord(src_, tok[1]),
                   detail::parse_coord(src_, tok[2])};
      if (kind == FormatKind::xyzn) {
        batch.push_back(p, {}, {detail::parse_coord(src_, tok[3]), detail::parse_coord(src_, tok[4]),
                                detail::parse_coord(src_, tok[5])});
      } else if (kind == FormatKind::xyzrgb) {
        batch.push_back(p, {detail::parse_channel(src_, tok[3], unit_scale_),
                            detail::parse_channel(src_, tok[4], unit_scale_),
                            detail::parse_channel(src_, tok[5], unit_scale_)});
      } else {
        batch.push_back(p);
      }
    }
    return batch.size();
  }

  bool unit_scale_colors() const noexcept { return unit_scale_; }

 private:
  // Colors use the 0..1 convention when every channel value is <= 1 and at
  // least one is written with a fractional part or exponent; integer files
  // holding only 0/1 values stay on the 0..255 scale.
  bool detect_unit_colors() {
    bool all_unit = true;
    bool any_fraction = false;
    bool any_value = false;
    std::array<std::string_view, 8> tok;
    std::string_view line;
    while (src_.next_line(line)) {
      if (is_blank(line)) continue;
      if (split_ws(line, tok.data(), tok.size()) < 6) continue;  // reported on the real pass
      for (std::size_t i = 3; i < 6; ++i) {
        double v;
        if (!parse_number(tok[i], v)) continue;
        any_value = true;
        if (v > 1.0) all_unit = false;
        if (detail::has_fraction_syntax(tok[i])) any_fraction = true;
      }
      if (!all_unit) break;
    }
    src_.rewind();
    return any_value && all_unit && any_fraction;
  }

  ByteSource src_;
  StreamInfo info_;
  bool unit_scale_ = false;
};

/// pts: first line is the point count, then "x y z [intensity] [r g b]".
class PtsReader final : public PointReader {
 public:
  explicit PtsReader(std::unique_ptr<std::istream> in) : src_(std::move(in)) {
    info_.format = canonical_descriptor(FormatKind::pts);
    std::string_view line;
    while (src_.next_line(line)) {
      if (is_blank(line)) continue;
      std::array<std::string_view, 2> tok;
      std::uint64_t count;
      if (split_ws(line, tok.data(), tok.size()) != 1 || !parse_number(tok[0], count))
        throw detail::parse_error(src_, "first line of a pts file must be the point count");
      info_.count = count;
      break;
    }
    if (!info_.count) throw detail::parse_error(src_, "missing pts point count");
    if (*info_.count > 0) {
      // Peek the first record to learn whether colors are present.
      if (!next_record()) throw detail::parse_error(src_, "missing pts point records");
      info_.format.has_color = layout_has_color(pending_fields_);
      have_pending_ = true;
    }
  }

  const StreamInfo& info() const override { return info_; }

  std::size_t read(PointCloud& batch, std::size_t max_points) override {
    batch.clear();
    while (batch.size() < max_points && produced_ < *info_.count) {
      if (!have_pending_ && !next_record()) {
        throw Error(ErrorCode::ParseError,
                    "header declares " + std::to_string(*info_.count) + " points but only " +
                        std::to_string(produced_) + " were found",
                    {src_.line_number() + 1, src_.offset(), std::nullopt});
      }
      have_pending_ = false;
      const std::size_t n = pending_fields_;
      if (layout_has_color(n) != info_.format.has_color)
        throw detail::parse_error(src_, "inconsistent pts record layout");
      const Vec3 p{detail::parse_coord(src_, tok_[0]), detail::parse_coord(src_, tok_[1]),
                   detail::parse_coord(src_, tok_[2])};
      Rgb c{};
      if (info_.format.has_color) {
        const std::size_t o = n == 7 ? 4 : 3;
        c = {detail::parse_channel(src_, tok_[o], false), detail::parse_channel(src_, tok_[o + 1], false),
             detail::parse_channel(src_, tok_[o + 2], false)};
      }
      batch.push_back(p, c);
      ++produced_;
    }
    if (produced_ == *info_.count && !checked_tail_) {
      checked_tail_ = true;
      std::string_view line;
      while (src_.next_line(line))
        if (!is_blank(line)) throw detail::parse_error(src_, "more point records than the declared count");
    }
    return batch.size();
  }

 private:
  static bool layout_has_color(std::size_t fields) { return fields == 6 || fields == 7; }

  bool next_record() {
    std::string_view line;
    while (src_.next_line(line)) {
      if (is_blank(line)) continue;
      line_copy_.assign(line);
      pending_fields_ = split_ws(line_copy_, tok_.data(), tok_.size());
      if (pending_fields_ < 3 || pending_fields_ > 7 || pending_fields_ == 5)
        throw detail::parse_error(src_, "pts records need 3, 4, 6 or 7 fields");
      return true;
    }
    return false;
  }

  ByteSource src_;
  StreamInfo info_;
  std::string line_copy_;
  std::array<std::string_view, 8> tok_;
  std::size_t pending_fields_ = 0;
  bool have_pending_ = false;
  bool checked_tail_ = false;
  std::uint64_t produced_ = 0;
};

/// Writer for xyz, xyzn, xyzrgb and pts. Positions and normals are printed
/// with six fixed decimals, colors as integers.
class TextWriter final : public detail::CheckedWriter {
 public:
  TextWriter(std::ostream& out, FormatKind kind) : CheckedWriter(out), kind_(kind) {}

  void begin(const WriteHeader& h) override {
    start(h, kind_ == FormatKind::pts);
    if (kind_ == FormatKind::pts) {
      sink_.put_int(h.count);
      sink_.put('\n');
    }
  }

  void write(const PointCloud& batch) override {
    account(batch.size());
    const auto pos = batch.positions();
    const auto col = batch.colors();
    const auto nrm = batch.normals();
    const bool color = kind_ == FormatKind::xyzrgb || (kind_ == FormatKind::pts && header_.has_color);
    for (std::size_t i = 0; i < batch.size(); ++i) {
      put_vec(pos[i]);
      if (kind_ == FormatKind::xyzn) {
        sink_.put(' ');
        put_vec(batch.has_normals() ? nrm[i] : Vec3{});
      }
      if (kind_ == FormatKind::pts) sink_.put(" 0");
      if (color) {
        for (std::size_t ch = 0; ch < 3; ++ch) {
          sink_.put(' ');
          sink_.put_int(static_cast<unsigned>(col[i][ch]));
        }
      }
      sink_.put('\n');
    }
  }

 private:
  void put_vec(const Vec3& v) {
    sink_.put_fixed(v.x, kAsciiDecimals);
    sink_.put(' ');
    sink_.put_fixed(v.y, kAsciiDecimals);
    sink_.put(' ');
    sink_.put_fixed(v.z, kAsciiDecimals);
  }

  FormatKind kind_;
};

}  // namespace cloudtint::io
