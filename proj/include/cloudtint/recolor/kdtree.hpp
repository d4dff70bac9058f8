// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "cloudtint/core/types.hpp"

namespace cloudtint::recolor {

/// Static 3-d tree over a subset of cloud points, answering exact nearest
/// neighbour queries. Equidistant candidates resolve to the lowest point
/// index, so results do not depend on tree layout.
class KdTree3 {
 public:
  KdTree3(std::span<const Vec3> positions, std::vector<std::size_t> indices)
      : pos_(positions), idx_(std::move(indices)) {
    if (!idx_.empty()) build(0, idx_.size(), 0);
  }

  bool empty() const noexcept { return idx_.empty(); }

  /// Index (into the original positions) of the nearest member to q.
  std::size_t nearest(const Vec3& q) const {
    Best best;
    search(0, idx_.size(), q, best);
    return best.index;
  }

 private:
  static constexpr std::size_t kLeaf = 8;

  struct Best {
    double d2 = std::numeric_limits<double>::infinity();
    std::size_t index = std::numeric_limits<std::size_t>::max();
  };

  // Node layout is implicit: range [lo, hi) split at mid = (lo + hi) / 2 on
  // axis depth % 3, with the splitting point stored at mid.
  void build(std::size_t lo, std::size_t hi, std::size_t depth) {
    if (hi - lo <= kLeaf) return;
    const std::size_t axis = depth % 3;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::nth_element(idx_.begin() + static_cast<std::ptrdiff_t>(lo), idx_.begin() + static_cast<std::ptrdiff_t>(mid),
                     idx_.begin() + static_cast<std::ptrdiff_t>(hi),
                     [&](std::size_t a, std::size_t b) { return pos_[a][axis] < pos_[b][axis]; });
    build(lo, mid, depth + 1);
    build(mid + 1, hi, depth + 1);
  }

  static void consider(const Vec3& q, const Vec3& p, std::size_t index, Best& best) {
    const double dx = p.x - q.x, dy = p.y - q.y, dz = p.z - q.z;
    const double d2 = dx * dx + dy * dy + dz * dz;
    if (d2 < best.d2 || (d2 == best.d2 && index < best.index)) {
      best.d2 = d2;
      best.index = index;
    }
  }

  void search(std::size_t lo, std::size_t hi, const Vec3& q, Best& best, std::size_t depth = 0) const {
    if (hi - lo <= kLeaf) {
      for (std::size_t i = lo; i < hi; ++i) consider(q, pos_[idx_[i]], idx_[i], best);
      return;
    }
    const std::size_t axis = depth % 3;
    const std::size_t mid = lo + (hi - lo) / 2;
    const Vec3& split = pos_[idx_[mid]];
    consider(q, split, idx_[mid], best);
    const double delta = q[axis] - split[axis];
    const bool left_first = delta <= 0.0;
    if (left_first)
      search(lo, mid, q, best, depth + 1);
    else
      search(mid + 1, hi, q, best, depth + 1);
    // Visit the far side unless it is strictly farther than the best so far;
    // equal distances must still be explored for the index tie-break.
    if (delta * delta <= best.d2) {
      if (left_first)
        search(mid + 1, hi, q, best, depth + 1);
      else
        search(lo, mid, q, best, depth + 1);
    }
  }

  std::span<const Vec3> pos_;
  std::vector<std::size_t> idx_;
};

}  // namespace cloudtint::recolor
