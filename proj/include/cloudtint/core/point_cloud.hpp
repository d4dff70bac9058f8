// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cloudtint/core/types.hpp"

namespace cloudtint {

/// Columnar point storage. Positions and colors are always parallel; normals
/// are either empty or parallel as well. Clouds read from colorless formats
/// carry black colors and has_color() == false.
class PointCloud {
 public:
  PointCloud() = default;
  explicit PointCloud(bool has_color, bool has_normals = false)
      : has_color_(has_color), has_normals_(has_normals) {}

  std::size_t size() const noexcept { return positions_.size(); }
  bool empty() const noexcept { return positions_.empty(); }

  bool has_color() const noexcept { return has_color_; }
  bool has_normals() const noexcept { return has_normals_; }
  void set_has_color(bool v) noexcept { has_color_ = v; }
  void drop_normals() {
    has_normals_ = false;
    normals_.clear();
    normals_.shrink_to_fit();
  }

  void reserve(std::size_t n) {
    positions_.reserve(n);
    colors_.reserve(n);
    if (has_normals_) normals_.reserve(n);
  }

  void clear() {
    positions_.clear();
    colors_.clear();
    normals_.clear();
  }

  void push_back(const Vec3& p, Rgb c = {}, const Vec3& n = {}) {
    positions_.push_back(p);
    colors_.push_back(c);
    if (has_normals_) normals_.push_back(n);
  }

  /// Appends point `i` of `other`, which must carry the same attributes.
  void push_from(const PointCloud& other, std::size_t i) {
    positions_.push_back(other.positions_[i]);
    colors_.push_back(other.colors_[i]);
    if (has_normals_) normals_.push_back(other.has_normals_ ? other.normals_[i] : Vec3{});
  }

  /// Empty cloud with the same attribute layout.
  PointCloud like() const { return PointCloud(has_color_, has_normals_); }

  std::span<const Vec3> positions() const noexcept { return positions_; }
  std::span<Vec3> positions() noexcept { return positions_; }
  std::span<const Rgb> colors() const noexcept { return colors_; }
  std::span<Rgb> colors() noexcept { return colors_; }
  std::span<const Vec3> normals() const noexcept { return normals_; }
  std::span<Vec3> normals() noexcept { return normals_; }

  const Vec3& position(std::size_t i) const { return positions_[i]; }
  Rgb color(std::size_t i) const { return colors_[i]; }

  /// Keeps the points whose mask entry is non-zero, preserving order.
  template <typename Mask>
  std::size_t retain(const Mask& keep) {
    std::size_t out = 0;
    for (std::size_t i = 0; i < positions_.size(); ++i) {
      if (!keep[i]) continue;
      positions_[out] = positions_[i];
      colors_[out] = colors_[i];
      if (has_normals_) normals_[out] = normals_[i];
      ++out;
    }
    const std::size_t removed = positions_.size() - out;
    positions_.resize(out);
    colors_.resize(out);
    if (has_normals_) normals_.resize(out);
    return removed;
  }

  bool valid() const noexcept {
    return colors_.size() == positions_.size() &&
           (has_normals_ ? normals_.size() == positions_.size() : normals_.empty());
  }

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  std::vector<Vec3> positions_;
  std::vector<Rgb> colors_;
  std::vector<Vec3> normals_;
  bool has_color_ = true;
  bool has_normals_ = false;
};

}  // namespace cloudtint
