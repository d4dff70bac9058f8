// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cloudtint/error.hpp"

namespace cloudtint {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr double& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }

  friend constexpr Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend constexpr Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

/// 8-bit RGB color as stored in a cloud.
struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  constexpr std::uint8_t operator[](std::size_t i) const { return i == 0 ? r : (i == 1 ? g : b); }
  constexpr std::uint8_t& operator[](std::size_t i) { return i == 0 ? r : (i == 1 ? g : b); }
  friend constexpr bool operator==(const Rgb&, const Rgb&) = default;
  friend constexpr auto operator<=>(const Rgb&, const Rgb&) = default;
};

/// Real-valued point in RGB space, used for all intermediate color math.
struct RgbReal {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;

  constexpr RgbReal() = default;
  constexpr RgbReal(double r_, double g_, double b_) : r(r_), g(g_), b(b_) {}
  constexpr explicit RgbReal(Rgb c) : r(c.r), g(c.g), b(c.b) {}

  constexpr double operator[](std::size_t i) const { return i == 0 ? r : (i == 1 ? g : b); }
  constexpr double& operator[](std::size_t i) { return i == 0 ? r : (i == 1 ? g : b); }
  friend constexpr bool operator==(const RgbReal&, const RgbReal&) = default;
};

/// Round half-to-even and clamp to [0, 255].
inline std::uint8_t quantize_channel(double v) {
  double rounded = std::nearbyint(v);  // default FE_TONEAREST: ties to even
  return static_cast<std::uint8_t>(std::clamp(rounded, 0.0, 255.0));
}

inline Rgb quantize(const RgbReal& c) {
  return {quantize_channel(c.r), quantize_channel(c.g), quantize_channel(c.b)};
}

inline double color_distance(const RgbReal& a, const RgbReal& b) {
  const double dr = a.r - b.r;
  const double dg = a.g - b.g;
  const double db = a.b - b.b;
  return std::sqrt(dr * dr + dg * dg + db * db);
}

inline double color_distance(Rgb a, const RgbReal& b) { return color_distance(RgbReal{a}, b); }

/// Labeled cuboid selecting a spatial region. Rotations are Euler angles in
/// degrees, composed intrinsically as R = Rz(z) * Ry(y) * Rx(x) about the
/// centroid. Dimensions are full edge lengths along the local axes.
struct OrientedBox {
  std::string label;
  Vec3 centroid;
  Vec3 dimensions{1.0, 1.0, 1.0};
  Vec3 rotations;

  friend bool operator==(const OrientedBox&, const OrientedBox&) = default;
};

inline double normalize_degrees(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0.0) r += 360.0;
  if (r >= 360.0) r = 0.0;  // fmod of tiny negatives can round up to 360
  return r + 0.0;           // folds -0.0 into +0.0
}

/// Builds a box and enforces its invariants: non-empty label, positive extents,
/// rotations folded into [0, 360).
inline OrientedBox make_box(std::string label, Vec3 centroid, Vec3 dimensions, Vec3 rotations = {}) {
  if (label.empty()) throw Error(ErrorCode::SchemaError, "box label must not be empty");
  for (std::size_t i = 0; i < 3; ++i) {
    if (!(dimensions[i] > 0.0) || !std::isfinite(dimensions[i]))
      throw Error(ErrorCode::SchemaError, "box dimensions must be positive and finite");
    if (!std::isfinite(centroid[i]) || !std::isfinite(rotations[i]))
      throw Error(ErrorCode::SchemaError, "box centroid and rotations must be finite");
  }
  return {std::move(label), centroid,
          dimensions,
          {normalize_degrees(rotations.x), normalize_degrees(rotations.y), normalize_degrees(rotations.z)}};
}

struct ColorSphere {
  RgbReal center;
  double radius = 0.0;

  bool contains(Rgb c) const { return color_distance(c, center) <= radius; }
};

/// Axis-aligned box in RGB space.
struct RgbAabb {
  RgbReal min;
  RgbReal max;

  RgbReal centroid() const {
    return {(min.r + max.r) / 2.0, (min.g + max.g) / 2.0, (min.b + max.b) / 2.0};
  }
  RgbReal extent() const { return {max.r - min.r, max.g - min.g, max.b - min.b}; }

  bool contains(Rgb c) const {
    for (std::size_t i = 0; i < 3; ++i)
      if (c[i] < min[i] || c[i] > max[i]) return false;
    return true;
  }

  bool valid() const {
    for (std::size_t i = 0; i < 3; ++i)
      if (!(min[i] <= max[i])) return false;
    return true;
  }

  bool within_color_cube() const {
    for (std::size_t i = 0; i < 3; ++i)
      if (min[i] < 0.0 || max[i] > 255.0) return false;
    return true;
  }

  friend bool operator==(const RgbAabb&, const RgbAabb&) = default;
};

struct PaletteEntry {
  std::string label;
  Rgb color;
  bool enabled = true;

  friend bool operator==(const PaletteEntry&, const PaletteEntry&) = default;
};

/// Label -> (color, enabled) map that remembers insertion order.
class LabelPalette {
 public:
  /// Returns false if the label is already present.
  bool insert(PaletteEntry entry) {
    if (find(entry.label)) return false;
    entries_.push_back(std::move(entry));
    return true;
  }

  const PaletteEntry* find(std::string_view label) const {
    auto it = std::find_if(entries_.begin(), entries_.end(),
                           [&](const PaletteEntry& e) { return e.label == label; });
    return it == entries_.end() ? nullptr : &*it;
  }

  const std::vector<PaletteEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  friend bool operator==(const LabelPalette&, const LabelPalette&) = default;

 private:
  std::vector<PaletteEntry> entries_;
};

}  // namespace cloudtint
