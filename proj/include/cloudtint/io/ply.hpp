// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "cloudtint/io/byte_stream.hpp"
#include "cloudtint/io/format.hpp"
#include "cloudtint/io/text_formats.hpp"

namespace cloudtint::io {

namespace ply {

enum class Scalar { i8, u8, i16, u16, i32, u32, f32, f64 };

inline std::optional<Scalar> scalar_from_name(std::string_view s) {
  if (s == "char" || s == "int8") return Scalar::i8;
  if (s == "uchar" || s == "uint8") return Scalar::u8;
  if (s == "short" || s == "int16") return Scalar::i16;
  if (s == "ushort" || s == "uint16") return Scalar::u16;
  if (s == "int" || s == "int32") return Scalar::i32;
  if (s == "uint" || s == "uint32") return Scalar::u32;
  if (s == "float" || s == "float32") return Scalar::f32;
  if (s == "double" || s == "float64") return Scalar::f64;
  return std::nullopt;
}

inline std::size_t scalar_size(Scalar s) {
  switch (s) {
    case Scalar::i8:
    case Scalar::u8: return 1;
    case Scalar::i16:
    case Scalar::u16: return 2;
    case Scalar::i32:
    case Scalar::u32:
    case Scalar::f32: return 4;
    case Scalar::f64: return 8;
  }
  return 0;
}

inline double load_scalar(const char* p, Scalar s, bool big_endian) {
  auto get = [&]<typename T>(T) -> double {
    return static_cast<double>(big_endian ? load_be<T>(p) : load_le<T>(p));
  };
  switch (s) {
    case Scalar::i8: return get(std::int8_t{});
    case Scalar::u8: return get(std::uint8_t{});
    case Scalar::i16: return get(std::int16_t{});
    case Scalar::u16: return get(std::uint16_t{});
    case Scalar::i32: return get(std::int32_t{});
    case Scalar::u32: return get(std::uint32_t{});
    case Scalar::f32: return get(float{});
    case Scalar::f64: return get(double{});
  }
  return 0.0;
}

struct Property {
  std::string name;
  Scalar type = Scalar::f32;
  bool is_list = false;
  Scalar count_type = Scalar::u8;
};

struct Element {
  std::string name;
  std::uint64_t count = 0;
  std::vector<Property> properties;

  bool fixed_size() const {
    return std::none_of(properties.begin(), properties.end(), [](const Property& p) { return p.is_list; });
  }
  std::size_t record_size() const {
    std::size_t n = 0;
    for (const auto& p : properties) n += scalar_size(p.type);
    return n;
  }
};

enum class Storage { ascii, binary_le, binary_be };

struct Header {
  Storage storage = Storage::ascii;
  std::vector<Element> elements;
};

inline Header parse_header(ByteSource& src) {
  auto fail = [&](const std::string& m) {
    return Error(ErrorCode::ParseError, m, {src.line_number(), src.line_start(), std::nullopt});
  };
  std::string_view line;
  if (!src.next_line(line) || line != "ply") throw Error(ErrorCode::HeaderMismatch, "PLY file must start with 'ply'");
  Header h;
  bool have_format = false;
  std::array<std::string_view, 8> tok;
  for (;;) {
    if (!src.next_line(line)) throw fail("unterminated PLY header");
    const std::size_t n = split_ws(line, tok.data(), tok.size());
    if (n == 0) continue;
    if (tok[0] == "end_header") break;
    if (tok[0] == "comment" || tok[0] == "obj_info") continue;
    if (tok[0] == "format") {
      if (n < 3) throw fail("malformed format line");
      if (tok[1] == "ascii") h.storage = Storage::ascii;
      else if (tok[1] == "binary_little_endian") h.storage = Storage::binary_le;
      else if (tok[1] == "binary_big_endian") h.storage = Storage::binary_be;
      else throw fail("unknown PLY format '" + std::string(tok[1]) + "'");
      have_format = true;
    } else if (tok[0] == "element") {
      std::uint64_t count;
      if (n != 3 || !parse_number(tok[2], count)) throw fail("malformed element line");
      h.elements.push_back({std::string(tok[1]), count, {}});
    } else if (tok[0] == "property") {
      if (h.elements.empty()) throw fail("property before any element");
      Property p;
      if (n >= 2 && tok[1] == "list") {
        auto ct = n == 5 ? scalar_from_name(tok[2]) : std::nullopt;
        auto vt = n == 5 ? scalar_from_name(tok[3]) : std::nullopt;
        if (!ct || !vt) throw fail("malformed list property");
        p = {std::string(tok[4]), *vt, true, *ct};
      } else {
        auto t = n == 3 ? scalar_from_name(tok[1]) : std::nullopt;
        if (!t) throw fail("malformed property line");
        p = {std::string(tok[2]), *t, false, Scalar::u8};
      }
      h.elements.back().properties.push_back(std::move(p));
    } else {
      throw fail("unknown PLY header keyword '" + std::string(tok[0]) + "'");
    }
  }
  if (!have_format) throw fail("PLY header lacks a format line");
  return h;
}

}  // namespace ply

class PlyReader final : public PointReader {
 public:
  explicit PlyReader(std::unique_ptr<std::istream> in) : src_(std::move(in)) {
    header_ = ply::parse_header(src_);
    auto vit = std::find_if(header_.elements.begin(), header_.elements.end(),
                            [](const ply::Element& e) { return e.name == "vertex"; });
    if (vit == header_.elements.end()) throw Error(ErrorCode::ParseError, "PLY file has no vertex element");
    vertex_ = *vit;
    if (!vertex_.fixed_size()) throw Error(ErrorCode::ParseError, "list properties on vertices are not supported");

    // Skip elements stored before the vertices.
    for (auto it = header_.elements.begin(); it != vit; ++it) {
      if (header_.storage == ply::Storage::ascii) {
        std::string_view line;
        for (std::uint64_t i = 0; i < it->count; ++i)
          if (!src_.next_line(line)) throw Error(ErrorCode::ParseError, "truncated PLY element '" + it->name + "'");
      } else {
        if (!it->fixed_size())
          throw Error(ErrorCode::ParseError, "cannot skip list element '" + it->name + "' stored before vertices");
        src_.skip(it->count * it->record_size());
      }
    }

    std::size_t offset = 0;
    for (std::size_t i = 0; i < vertex_.properties.size(); ++i) {
      const auto& p = vertex_.properties[i];
      const Slot slot{i, offset, p.type};
      offset += ply::scalar_size(p.type);
      const std::string& n = p.name;
      if (n == "x") pos_[0] = slot;
      else if (n == "y") pos_[1] = slot;
      else if (n == "z") pos_[2] = slot;
      else if (n == "nx" || n == "normal_x") nrm_[0] = slot;
      else if (n == "ny" || n == "normal_y") nrm_[1] = slot;
      else if (n == "nz" || n == "normal_z") nrm_[2] = slot;
      else if (n == "red" || n == "r" || n == "diffuse_red") col_[0] = slot;
      else if (n == "green" || n == "g" || n == "diffuse_green") col_[1] = slot;
      else if (n == "blue" || n == "b" || n == "diffuse_blue") col_[2] = slot;
    }
    if (!pos_[0] || !pos_[1] || !pos_[2]) throw Error(ErrorCode::ParseError, "PLY vertices lack x/y/z");
    record_size_ = offset;

    info_.format.kind = FormatKind::ply;
    info_.format.encoding = header_.storage == ply::Storage::ascii ? Encoding::ascii : Encoding::binary_little_endian;
    info_.format.has_color = col_[0] && col_[1] && col_[2];
    info_.format.has_normals = nrm_[0] && nrm_[1] && nrm_[2];
    info_.count = vertex_.count;
    if (info_.format.has_color)
      for (const auto& c : col_)
        if (c->type == ply::Scalar::u16 || c->type == ply::Scalar::i16) info_.narrowed_16bit_color = true;
  }

  const StreamInfo& info() const override { return info_; }

  std::size_t read(PointCloud& batch, std::size_t max_points) override {
    batch.clear();
    const std::uint64_t left = vertex_.count - produced_;
    const std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(left, max_points));
    batch.reserve(n);
    if (header_.storage == ply::Storage::ascii)
      read_ascii(batch, n);
    else
      read_binary(batch, n);
    produced_ += n;
    return n;
  }

 private:
  struct Slot {
    std::size_t index;
    std::size_t offset;
    ply::Scalar type;
  };

  std::uint8_t to_channel(double v, ply::Scalar t) const {
    switch (t) {
      case ply::Scalar::u16:
      case ply::Scalar::i16: return static_cast<std::uint8_t>(static_cast<std::uint16_t>(std::clamp(v, 0.0, 65535.0)) >> 8);
      case ply::Scalar::f32:
      case ply::Scalar::f64: return quantize_channel(v * 255.0);
      default: return quantize_channel(v);
    }
  }

  void read_binary(PointCloud& batch, std::size_t n) {
    const bool be = header_.storage == ply::Storage::binary_be;
    for (std::size_t i = 0; i < n; ++i) {
      const char* rec = src_.read_exact(record_size_);
      auto get = [&](const Slot& s) { return ply::load_scalar(rec + s.offset, s.type, be); };
      const Vec3 p{get(*pos_[0]), get(*pos_[1]), get(*pos_[2])};
      Rgb c{};
      if (info_.format.has_color)
        c = {to_channel(get(*col_[0]), col_[0]->type), to_channel(get(*col_[1]), col_[1]->type),
             to_channel(get(*col_[2]), col_[2]->type)};
      Vec3 nv{};
      if (info_.format.has_normals) nv = {get(*nrm_[0]), get(*nrm_[1]), get(*nrm_[2])};
      batch.push_back(p, c, nv);
    }
  }

  void read_ascii(PointCloud& batch, std::size_t n) {
    const std::size_t nprops = vertex_.properties.size();
    tok_.resize(nprops + 1);
    std::string_view line;
    for (std::size_t i = 0; i < n; ++i) {
      do {
        if (!src_.next_line(line))
          throw Error(ErrorCode::ParseError, "fewer vertices than declared",
                      {src_.line_number() + 1, src_.offset(), std::nullopt});
      } while (is_blank(line));
      if (split_ws(line, tok_.data(), tok_.size()) != nprops)
        throw detail::parse_error(src_, "vertex record has the wrong number of fields");
      auto get = [&](const Slot& s) { return detail::parse_coord(src_, tok_[s.index]); };
      const Vec3 p{get(*pos_[0]), get(*pos_[1]), get(*pos_[2])};
      Rgb c{};
      if (info_.format.has_color)
        c = {to_channel(get(*col_[0]), col_[0]->type), to_channel(get(*col_[1]), col_[1]->type),
             to_channel(get(*col_[2]), col_[2]->type)};
      Vec3 nv{};
      if (info_.format.has_normals) nv = {get(*nrm_[0]), get(*nrm_[1]), get(*nrm_[2])};
      batch.push_back(p, c, nv);
    }
  }

  ByteSource src_;
  ply::Header header_;
  ply::Element vertex_;
  std::array<std::optional<Slot>, 3> pos_, nrm_, col_;
  std::size_t record_size_ = 0;
  std::vector<std::string_view> tok_;
  StreamInfo info_;
  std::uint64_t produced_ = 0;
};

/// Writes double x/y/z, optional double nx/ny/nz and uchar red/green/blue.
class PlyWriter final : public detail::CheckedWriter {
 public:
  PlyWriter(std::ostream& out, Encoding encoding) : CheckedWriter(out), encoding_(encoding) {}

  void begin(const WriteHeader& h) override {
    start(h);
    sink_.put("ply\nformat ");
    sink_.put(encoding_ == Encoding::ascii ? "ascii" : "binary_little_endian");
    sink_.put(" 1.0\nelement vertex ");
    sink_.put_int(h.count);
    sink_.put("\nproperty double x\nproperty double y\nproperty double z\n");
    if (h.has_normals) sink_.put("property double nx\nproperty double ny\nproperty double nz\n");
    if (h.has_color) sink_.put("property uchar red\nproperty uchar green\nproperty uchar blue\n");
    sink_.put("end_header\n");
  }

  void write(const PointCloud& batch) override {
    account(batch.size());
    const auto pos = batch.positions();
    const auto col = batch.colors();
    const auto nrm = batch.normals();
    const bool normals = header_.has_normals;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const Vec3 nv = normals && batch.has_normals() ? nrm[i] : Vec3{};
      if (encoding_ == Encoding::ascii) {
        put_ascii(pos[i]);
        if (normals) {
          sink_.put(' ');
          put_ascii(nv);
        }
        if (header_.has_color)
          for (std::size_t ch = 0; ch < 3; ++ch) {
            sink_.put(' ');
            sink_.put_int(static_cast<unsigned>(col[i][ch]));
          }
        sink_.put('\n');
      } else {
        char rec[51];
        std::size_t o = 0;
        for (std::size_t k = 0; k < 3; ++k, o += 8) store_le(rec + o, pos[i][k]);
        if (normals)
          for (std::size_t k = 0; k < 3; ++k, o += 8) store_le(rec + o, nv[k]);
        if (header_.has_color)
          for (std::size_t k = 0; k < 3; ++k) rec[o++] = static_cast<char>(col[i][k]);
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
