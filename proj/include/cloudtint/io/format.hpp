// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cloudtint/core/point_cloud.hpp"
#include "cloudtint/error.hpp"

namespace cloudtint::io {

enum class FormatKind { las, laz, xyz, xyzn, xyzrgb, pts, ply, pcd };
enum class Encoding { ascii, binary_little_endian };

inline constexpr std::string_view to_string(FormatKind k) {
  switch (k) {
    case FormatKind::las: return "las";
    case FormatKind::laz: return "laz";
    case FormatKind::xyz: return "xyz";
    case FormatKind::xyzn: return "xyzn";
    case FormatKind::xyzrgb: return "xyzrgb";
    case FormatKind::pts: return "pts";
    case FormatKind::ply: return "ply";
    case FormatKind::pcd: return "pcd";
  }
  return "?";
}

inline constexpr std::string_view to_string(Encoding e) {
  return e == Encoding::ascii ? "ascii" : "binary_little_endian";
}

inline std::optional<FormatKind> kind_from_extension(std::string_view ext) {
  std::string e(ext);
  if (!e.empty() && e.front() == '.') e.erase(0, 1);
  std::transform(e.begin(), e.end(), e.begin(), [](unsigned char c) { return std::tolower(c); });
  if (e == "las") return FormatKind::las;
  if (e == "laz") return FormatKind::laz;
  if (e == "xyz") return FormatKind::xyz;
  if (e == "xyzn") return FormatKind::xyzn;
  if (e == "xyzrgb") return FormatKind::xyzrgb;
  if (e == "pts") return FormatKind::pts;
  if (e == "ply") return FormatKind::ply;
  if (e == "pcd") return FormatKind::pcd;
  return std::nullopt;
}

inline constexpr bool is_ascii_only(FormatKind k) {
  return k == FormatKind::xyz || k == FormatKind::xyzn || k == FormatKind::xyzrgb || k == FormatKind::pts;
}

/// Whether a format can carry per-point color at all.
inline constexpr bool can_store_color(FormatKind k) {
  return k != FormatKind::xyz && k != FormatKind::xyzn;
}

inline constexpr bool can_store_normals(FormatKind k) {
  return k == FormatKind::xyzn || k == FormatKind::ply || k == FormatKind::pcd;
}

struct FormatDescriptor {
  FormatKind kind = FormatKind::ply;
  Encoding encoding = Encoding::binary_little_endian;
  bool has_color = false;
  bool has_normals = false;

  friend bool operator==(const FormatDescriptor&, const FormatDescriptor&) = default;
};

/// Descriptor with the attribute flags every instance of the kind must have.
inline FormatDescriptor canonical_descriptor(FormatKind kind, Encoding encoding = Encoding::binary_little_endian) {
  FormatDescriptor d{kind, encoding, false, false};
  if (is_ascii_only(kind)) d.encoding = Encoding::ascii;
  if (kind == FormatKind::las || kind == FormatKind::laz) d.encoding = Encoding::binary_little_endian;
  if (kind == FormatKind::xyzn) d.has_normals = true;
  if (kind == FormatKind::xyzrgb) d.has_color = true;
  return d;
}

struct Diagnostics {
  std::vector<std::string> warnings;

  void warn(std::string msg) {
    if (std::find(warnings.begin(), warnings.end(), msg) == warnings.end()) warnings.push_back(std::move(msg));
  }
};

struct Bounds3 {
  Vec3 min;
  Vec3 max;

  static Bounds3 of(std::span<const Vec3> pts) {
    Bounds3 b{pts.empty() ? Vec3{} : pts.front(), pts.empty() ? Vec3{} : pts.front()};
    for (const Vec3& p : pts) b.extend(p);
    return b;
  }
  void extend(const Vec3& p) {
    for (std::size_t i = 0; i < 3; ++i) {
      min[i] = std::min(min[i], p[i]);
      max[i] = std::max(max[i], p[i]);
    }
  }
};

/// What a reader knows before decoding points.
struct StreamInfo {
  FormatDescriptor format;
  std::optional<std::uint64_t> count;
  std::optional<Bounds3> bounds;
  bool narrowed_16bit_color = false;  // source colors are 16-bit, stored >> 8
};

/// Pulls points in batches. read() replaces the batch contents and returns
/// the number of points produced; 0 signals end of stream.
class PointReader {
 public:
  virtual ~PointReader() = default;
  virtual const StreamInfo& info() const = 0;
  virtual std::size_t read(PointCloud& batch, std::size_t max_points) = 0;

  PointCloud make_batch() const { return PointCloud(info().format.has_color, info().format.has_normals); }
};

struct WriteHeader {
  std::uint64_t count = 0;
  bool count_known = true;  // xyz-family outputs may stream an unknown count
  bool has_color = false;
  bool has_normals = false;
  std::optional<Bounds3> bounds;  // required by LAS
};

class PointWriter {
 public:
  virtual ~PointWriter() = default;
  virtual void begin(const WriteHeader& header) = 0;
  virtual void write(const PointCloud& batch) = 0;
  /// Flushes and returns the total number of bytes written.
  virtual std::uint64_t finish() = 0;
  /// True if begin() needs exact bounds.
  virtual bool needs_bounds() const { return false; }
};

struct WriteOptions {
  double las_scale = 1e-4;
};

inline constexpr std::size_t kChunkPoints = 1u << 20;

}  // namespace cloudtint::io
