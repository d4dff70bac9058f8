// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "cloudtint/core/types.hpp"

namespace cloudtint {

/// Component-wise mean. Sums are exact in 64-bit integers, so the result does
/// not depend on input order.
inline RgbReal mean_color(std::span<const Rgb> colors) {
  if (colors.empty()) throw Error(ErrorCode::EmptySelection, "mean of an empty color selection");
  std::array<std::uint64_t, 3> sum{};
  for (const Rgb& c : colors) {
    sum[0] += c.r;
    sum[1] += c.g;
    sum[2] += c.b;
  }
  const double n = static_cast<double>(colors.size());
  return {static_cast<double>(sum[0]) / n, static_cast<double>(sum[1]) / n,
          static_cast<double>(sum[2]) / n};
}

struct ColorAabbFit {
  RgbAabb box;
  std::size_t unique_colors = 0;  // only filled when requested
};

inline std::size_t count_unique_colors(std::span<const Rgb> colors) {
  std::vector<bool> seen(1u << 24, false);
  std::size_t n = 0;
  for (const Rgb& c : colors) {
    const std::uint32_t key = (std::uint32_t{c.r} << 16) | (std::uint32_t{c.g} << 8) | c.b;
    if (!seen[key]) {
      seen[key] = true;
      ++n;
    }
  }
  return n;
}

/// Axis-aligned bounds of a color set. Min and max are unaffected by
/// duplicates, so `unique_only` only adds the distinct-color count.
inline ColorAabbFit rgb_color_aabb(std::span<const Rgb> colors, bool unique_only = false) {
  if (colors.empty()) throw Error(ErrorCode::EmptySelection, "color bounds of an empty selection");
  Rgb lo = colors.front();
  Rgb hi = colors.front();
  for (const Rgb& c : colors) {
    for (std::size_t i = 0; i < 3; ++i) {
      lo[i] = std::min(lo[i], c[i]);
      hi[i] = std::max(hi[i], c[i]);
    }
  }
  ColorAabbFit fit{{RgbReal{lo}, RgbReal{hi}}, 0};
  if (unique_only) fit.unique_colors = count_unique_colors(colors);
  return fit;
}

}  // namespace cloudtint
