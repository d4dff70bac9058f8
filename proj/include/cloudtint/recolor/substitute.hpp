// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "cloudtint/core/geometry.hpp"
#include "cloudtint/ingest/palette.hpp"
#include "cloudtint/recolor/report.hpp"

namespace cloudtint::recolor {

/// Semantic substitution: each point inside an enabled, colored box takes the
/// color of the first such box in file order; every other point is removed.
inline StepReport apply_recolor_substitute(PointCloud& cloud, const std::vector<ingest::JoinedBox>& joined) {
  StepReport rep;
  rep.op = "substitute";
  rep.points_before = cloud.size();

  std::vector<BoxFrame> frames;
  std::vector<Rgb> colors;
  for (const auto& j : joined) {
    if (!j.enabled || !j.color) continue;
    frames.emplace_back(j.box);
    colors.push_back(*j.color);
  }
  if (frames.empty()) throw Error(ErrorCode::NoEnabledBoxes, "no enabled box has a palette color");

  constexpr std::uint32_t kNone = ~std::uint32_t{0};
  std::vector<std::uint32_t> owner(cloud.size(), kNone);
  const auto pos = cloud.positions();
  parallel_for(cloud.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i)
      for (std::size_t k = 0; k < frames.size(); ++k)
        if (frames[k].contains(pos[i])) {
          owner[i] = static_cast<std::uint32_t>(k);
          break;
        }
  });

  auto out = cloud.colors();
  std::vector<std::uint8_t> keep(cloud.size(), 0);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (owner[i] == kNone) continue;
    keep[i] = 1;
    out[i] = colors[owner[i]];
  }
  rep.deleted = cloud.retain(keep);
  rep.recolored = cloud.size();
  rep.examined = cloud.size();
  cloud.set_has_color(true);
  return rep;
}

inline PointCloud recolor_substitute(PointCloud cloud, const std::vector<ingest::JoinedBox>& joined) {
  apply_recolor_substitute(cloud, joined);
  return cloud;
}

}  // namespace cloudtint::recolor
