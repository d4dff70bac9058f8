// SPDX-License-Identifier: Apache-2.0

// PCD v0.7, ascii and binary. Color travels as the packed 32-bit "rgb" (or
// "rgba") field: 0x00RRGGBB.

#pragma once

#include <bit>
#include <memory>
#include <string>
#include <vector>

#include "cloudtint/io/byte_stream.hpp"
#include "cloudtint/io/format.hpp"
#include "cloudtint/io/text_formats.hpp"

namespace cloudtint::io {

namespace pcd {

struct Field {
  std::string name;
  std::size_t size = 4;
  char type = 'F';
  std::size_t count = 1;
  std::size_t offset = 0;   // byte offset in a binary record
  std::size_t column = 0;   // first token index in an ascii record
};

struct Header {
  std::vector<Field> fields;
  std::uint64_t width = 0;
  std::uint64_t height = 1;
  std::optional<std::uint64_t> points;
  std::string data;
  std::size_t record_size = 0;
  std::size_t columns = 0;

  const Field* find(std::string_view name) const {
    for (const auto& f : fields)
      if (f.name == name) return &f;
    return nullptr;
  }
  std::uint64_t count() const { return points ? *points : width * height; }
};

inline double load_field(const char* p, const Field& f) {
  switch (f.type) {
    case 'F':
      if (f.size == 4) return load_le<float>(p);
      if (f.size == 8) return load_le<double>(p);
      break;
    case 'U':
      if (f.size == 1) return load_le<std::uint8_t>(p);
      if (f.size == 2) return load_le<std::uint16_t>(p);
      if (f.size == 4) return load_le<std::uint32_t>(p);
      if (f.size == 8) return static_cast<double>(load_le<std::uint64_t>(p));
      break;
    case 'I':
      if (f.size == 1) return load_le<std::int8_t>(p);
      if (f.size == 2) return load_le<std::int16_t>(p);
      if (f.size == 4) return load_le<std::int32_t>(p);
      if (f.size == 8) return static_cast<double>(load_le<std::int64_t>(p));
      break;
  }
  throw Error(ErrorCode::ParseError, "unsupported PCD field type for '" + f.name + "'");
}

inline Rgb unpack_rgb(std::uint32_t v) {
  return {static_cast<std::uint8_t>((v >> 16) & 0xff), static_cast<std::uint8_t>((v >> 8) & 0xff),
          static_cast<std::uint8_t>(v & 0xff)};
}

inline std::uint32_t pack_rgb(Rgb c) {
  return (std::uint32_t{c.r} << 16) | (std::uint32_t{c.g} << 8) | std::uint32_t{c.b};
}

inline Header parse_header(ByteSource& src) {
  auto fail = [&](const std::string& m) {
    return Error(ErrorCode::ParseError, m, {src.line_number(), src.line_start(), std::nullopt});
  };
  Header h;
  std::vector<std::string> names;
  std::vector<std::size_t> sizes, counts;
  std::vector<char> types;
  bool saw_keyword = false;
  std::vector<std::string_view> tok(64);
  std::string_view line;
  while (src.next_line(line)) {
    if (is_blank(line) || line.front() == '#') continue;
    std::size_t n = split_ws(line, tok.data(), tok.size());
    if (n > tok.size()) {
      tok.resize(n);
      n = split_ws(line, tok.data(), tok.size());
    }
    const std::string_view key = tok[0];
    if (!saw_keyword && key != "VERSION" && key != "FIELDS")
      throw Error(ErrorCode::HeaderMismatch, "PCD header must start with VERSION or FIELDS");
    saw_keyword = true;
    auto ints = [&](std::vector<std::size_t>& out) {
      for (std::size_t i = 1; i < n; ++i) {
        std::size_t v;
        if (!parse_number(tok[i], v)) throw fail("malformed " + std::string(key) + " line");
        out.push_back(v);
      }
    };
    if (key == "VERSION" || key == "VIEWPOINT") {
      continue;
    } else if (key == "FIELDS" || key == "COLUMNS") {
      for (std::size_t i = 1; i < n; ++i) names.emplace_back(tok[i]);
    } else if (key == "SIZE") {
      ints(sizes);
    } else if (key == "TYPE") {
      for (std::size_t i = 1; i < n; ++i) {
        if (tok[i].size() != 1 || std::string_view("FUI").find(tok[i][0]) == std::string_view::npos)
          throw fail("malformed TYPE line");
        types.push_back(tok[i][0]);
      }
    } else if (key == "COUNT") {
      ints(counts);
    } else if (key == "WIDTH" || key == "HEIGHT" || key == "POINTS") {
      std::uint64_t v;
      if (n != 2 || !parse_number(tok[1], v)) throw fail("malformed " + std::string(key) + " line");
      if (key == "WIDTH") h.width = v;
      else if (key == "HEIGHT") h.height = v;
      else h.points = v;
    } else if (key == "DATA") {
      if (n != 2) throw fail("malformed DATA line");
      h.data = std::string(tok[1]);
      break;
    } else {
      throw fail("unknown PCD header keyword '" + std::string(key) + "'");
    }
  }
  if (h.data.empty()) throw fail("PCD header lacks a DATA line");
  if (counts.empty()) counts.assign(names.size(), 1);
  if (names.empty() || sizes.size() != names.size() || types.size() != names.size() || counts.size() != names.size())
    throw fail("PCD FIELDS/SIZE/TYPE/COUNT lengths disagree");
  std::size_t offset = 0, column = 0;
  for (std::size_t i = 0; i < names.size(); ++i) {
    h.fields.push_back({names[i], sizes[i], types[i], counts[i], offset, column});
    offset += sizes[i] * counts[i];
    column += counts[i];
  }
  h.record_size = offset;
  h.columns = column;
  return h;
}

}  // namespace pcd

class PcdReader final : public PointReader {
 public:
  explicit PcdReader(std::unique_ptr<std::istream> in) : src_(std::move(in)) {
    hdr_ = pcd::parse_header(src_);
    if (hdr_.data == "binary_compressed")
      throw Error(ErrorCode::CodecUnavailable, "PCD binary_compressed data is not supported");
    if (hdr_.data != "ascii" && hdr_.data != "binary")
      throw Error(ErrorCode::ParseError, "unknown PCD DATA encoding '" + hdr_.data + "'");
    for (std::size_t k = 0; k < 3; ++k) {
      pos_[k] = hdr_.find(std::string(1, "xyz"[k]));
      nrm_[k] = hdr_.find(std::string("normal_") + "xyz"[k]);
    }
    if (!pos_[0] || !pos_[1] || !pos_[2]) throw Error(ErrorCode::ParseError, "PCD file lacks x/y/z fields");
    rgb_ = hdr_.find("rgb");
    if (!rgb_) rgb_ = hdr_.find("rgba");
    if (rgb_ && rgb_->size != 4) throw Error(ErrorCode::ParseError, "PCD rgb field must be 4 bytes");
    info_.format = {FormatKind::pcd, hdr_.data == "ascii" ? Encoding::ascii : Encoding::binary_little_endian,
                    rgb_ != nullptr, nrm_[0] && nrm_[1] && nrm_[2]};
    info_.count = hdr_.count();
    tok_.resize(hdr_.columns + 1);
  }

  const StreamInfo& info() const override { return info_; }

  std::size_t read(PointCloud& batch, std::size_t max_points) override {
    batch.clear();
    const std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(*info_.count - produced_, max_points));
    batch.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (info_.format.encoding == Encoding::ascii)
        read_ascii_point(batch);
      else
        read_binary_point(batch);
    }
    produced_ += n;
    return n;
  }

 private:
  void read_binary_point(PointCloud& batch) {
    const char* rec = src_.read_exact(hdr_.record_size);
    const Vec3 p{pcd::load_field(rec + pos_[0]->offset, *pos_[0]), pcd::load_field(rec + pos_[1]->offset, *pos_[1]),
                 pcd::load_field(rec + pos_[2]->offset, *pos_[2])};
    Rgb c{};
    if (rgb_) c = pcd::unpack_rgb(load_le<std::uint32_t>(rec + rgb_->offset));
    Vec3 nv{};
    if (info_.format.has_normals)
      nv = {pcd::load_field(rec + nrm_[0]->offset, *nrm_[0]), pcd::load_field(rec + nrm_[1]->offset, *nrm_[1]),
            pcd::load_field(rec + nrm_[2]->offset, *nrm_[2])};
    batch.push_back(p, c, nv);
  }

  void read_ascii_point(PointCloud& batch) {
    std::string_view line;
    do {
      if (!src_.next_line(line))
        throw Error(ErrorCode::ParseError, "fewer points than declared",
                    {src_.line_number() + 1, src_.offset(), std::nullopt});
    } while (is_blank(line));
    if (split_ws(line, tok_.data(), tok_.size()) != hdr_.columns)
      throw detail::parse_error(src_, "point record has the wrong number of fields");
    auto coord = [&](const pcd::Field* f) { return detail::parse_coord(src_, tok_[f->column]); };
    const Vec3 p{coord(pos_[0]), coord(pos_[1]), coord(pos_[2])};
    Rgb c{};
    if (rgb_) {
      const std::string_view t = tok_[rgb_->column];
      std::uint32_t bits = 0;
      bool ok;
      if (rgb_->type == 'F') {
        float f;
        ok = parse_number(t, f);
        bits = std::bit_cast<std::uint32_t>(f);
      } else {
        ok = parse_number(t, bits);
      }
      if (!ok) throw detail::parse_error(src_, "invalid rgb value '" + std::string(t) + "'");
      c = pcd::unpack_rgb(bits);
    }
    Vec3 nv{};
    if (info_.format.has_normals) nv = {coord(nrm_[0]), coord(nrm_[1]), coord(nrm_[2])};
    batch.push_back(p, c, nv);
  }

  ByteSource src_;
  pcd::Header hdr_;
  std::array<const pcd::Field*, 3> pos_{}, nrm_{};
  const pcd::Field* rgb_ = nullptr;
  std::vector<std::string_view> tok_;
  StreamInfo info_;
  std::uint64_t produced_ = 0;
};

/// Writes x/y/z (and normal_*) as F 8 plus a packed rgb field of type U 4.
class PcdWriter final : public detail::CheckedWriter {
 public:
  PcdWriter(std::ostream& out, Encoding encoding) : CheckedWriter(out), encoding_(encoding) {}

  void begin(const WriteHeader& h) override {
    start(h);
    std::string fields = "x y z", sizes = "8 8 8", types = "F F F", counts = "1 1 1";
    if (h.has_normals) {
      fields += " normal_x normal_y normal_z";
      sizes += " 8 8 8";
      types += " F F F";
      counts += " 1 1 1";
    }
    if (h.has_color) {
      fields += " rgb";
      sizes += " 4";
      types += " U";
      counts += " 1";
    }
    sink_.put("# .PCD v0.7 - Point Cloud Data file format\nVERSION 0.7\nFIELDS " + fields + "\nSIZE " + sizes +
              "\nTYPE " + types + "\nCOUNT " + counts + "\nWIDTH ");
    sink_.put_int(h.count);
    sink_.put("\nHEIGHT 1\nVIEWPOINT 0 0 0 1 0 0 0\nPOINTS ");
    sink_.put_int(h.count);
    sink_.put(encoding_ == Encoding::ascii ? "\nDATA ascii\n" : "\nDATA binary\n");
  }

  void write(const PointCloud& batch) override {
    account(batch.size());
    const auto pos = batch.positions();
    const auto col = batch.colors();
    const auto nrm = batch.normals();
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const Vec3 nv = header_.has_normals && batch.has_normals() ? nrm[i] : Vec3{};
      if (encoding_ == Encoding::ascii) {
        put_ascii(pos[i]);
        if (header_.has_normals) {
          sink_.put(' ');
          put_ascii(nv);
        }
        if (header_.has_color) {
          sink_.put(' ');
          sink_.put_int(pcd::pack_rgb(col[i]));
        }
        sink_.put('\n');
      } else {
        char rec[52];
        std::size_t o = 0;
        for (std::size_t k = 0; k < 3; ++k, o += 8) store_le(rec + o, pos[i][k]);
        if (header_.has_normals)
          for (std::size_t k = 0; k < 3; ++k, o += 8) store_le(rec + o, nv[k]);
        if (header_.has_color) {
          store_le(rec + o, pcd::pack_rgb(col[i]));
          o += 4;
        }
        sink_.put(std::string_view(rec, o));
      }
    }
  }

 private:
  void put_ascii(const Vec3& v) {
    sink_.put_fixed(v.x, kAsciiDecimals);
    sink_.put(' ');
    sink_.put_fixed(v.y, kAsciiDecimals);
    sink_.put(' ');
    sink_.put_fixed(v.z, kAsciiDecimals);
  }

  Encoding encoding_;
};

}  // namespace cloudtint::io
