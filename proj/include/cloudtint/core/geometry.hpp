// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "cloudtint/core/point_cloud.hpp"
#include "cloudtint/core/types.hpp"
#include "cloudtint/parallel.hpp"

namespace cloudtint {

/// Precomputed world->local transform for repeated containment tests against
/// one box. Stores the rows of R^T, i.e. the local axes expressed in world
/// coordinates, with R = Rz * Ry * Rx.
class BoxFrame {
 public:
  explicit BoxFrame(const OrientedBox& box) : centroid_(box.centroid) {
    constexpr double kDeg = std::numbers::pi / 180.0;
    const double cx = std::cos(box.rotations.x * kDeg), sx = std::sin(box.rotations.x * kDeg);
    const double cy = std::cos(box.rotations.y * kDeg), sy = std::sin(box.rotations.y * kDeg);
    const double cz = std::cos(box.rotations.z * kDeg), sz = std::sin(box.rotations.z * kDeg);
    // Columns of Rz*Ry*Rx are the local axes.
    axes_[0] = {cz * cy, sz * cy, -sy};
    axes_[1] = {cz * sy * sx - sz * cx, sz * sy * sx + cz * cx, cy * sx};
    axes_[2] = {cz * sy * cx + sz * sx, sz * sy * cx - cz * sx, cy * cx};
    half_ = {box.dimensions.x / 2.0, box.dimensions.y / 2.0, box.dimensions.z / 2.0};
  }

  Vec3 to_local(const Vec3& p) const {
    const Vec3 d = p - centroid_;
    return {dot(axes_[0], d), dot(axes_[1], d), dot(axes_[2], d)};
  }

  bool contains(const Vec3& p) const {
    const Vec3 q = to_local(p);
    return std::abs(q.x) <= half_.x && std::abs(q.y) <= half_.y && std::abs(q.z) <= half_.z;
  }

 private:
  static double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

  Vec3 centroid_;
  std::array<Vec3, 3> axes_;
  Vec3 half_;
};

/// Faces are inclusive.
inline bool point_in_box(const Vec3& p, const OrientedBox& box) { return BoxFrame(box).contains(p); }

/// Per-point containment flags for one box.
inline std::vector<std::uint8_t> select_in_box(const PointCloud& cloud, const OrientedBox& box) {
  const BoxFrame frame(box);
  std::vector<std::uint8_t> mask(cloud.size(), 0);
  const auto pos = cloud.positions();
  parallel_for(cloud.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) mask[i] = frame.contains(pos[i]) ? 1 : 0;
  });
  return mask;
}

}  // namespace cloudtint
