// SPDX-License-Identifier: Apache-2.0

// RGB bounding-box remap: the axis-aligned box of the selected colors is moved
// onto a user-chosen target box by a per-channel affine map. Shading within
// the selection survives because each channel map has non-negative gain.

#pragma once

#include <vector>

#include "cloudtint/core/color_stats.hpp"
#include "cloudtint/recolor/sphere.hpp"

namespace cloudtint::recolor {

struct RemapParams {
  RgbAabb target;

  void validate() const {
    if (!target.valid()) throw Error(ErrorCode::InvalidArgument, "target color box has min > max");
    if (!target.within_color_cube()) throw Error(ErrorCode::InvalidArgument, "target color box leaves [0, 255]^3");
  }
};

/// Per-channel map taking `source` onto `target`. Channels with zero source
/// extent collapse to the target centroid.
class ColorBoxMap {
 public:
  ColorBoxMap(const RgbAabb& source, const RgbAabb& target) {
    const RgbReal sc = source.centroid(), se = source.extent();
    const RgbReal tc = target.centroid(), te = target.extent();
    for (std::size_t i = 0; i < 3; ++i) {
      src_c_[i] = sc[i];
      dst_c_[i] = tc[i];
      gain_[i] = se[i] == 0.0 ? 0.0 : te[i] / se[i];
    }
  }

  RgbReal map_real(Rgb c) const {
    RgbReal out;
    for (std::size_t i = 0; i < 3; ++i) out[i] = dst_c_[i] + (static_cast<double>(c[i]) - src_c_[i]) * gain_[i];
    return out;
  }

  Rgb operator()(Rgb c) const { return quantize(map_real(c)); }

 private:
  RgbReal src_c_, dst_c_, gain_;
};

inline StepReport apply_recolor_rgb_box_remap(PointCloud& cloud, const OrientedBox& box, const RemapParams& params) {
  params.validate();
  StepReport rep;
  rep.op = "recolor_rgb_box";
  rep.box_label = box.label;
  rep.points_before = cloud.size();
  const auto idx = detail::indices_in_box(cloud, box);
  const auto colors = detail::gather_colors(cloud, idx);
  const ColorAabbFit fit = rgb_color_aabb(colors, true);
  rep.examined = idx.size();
  rep.source_aabb = fit.box;
  rep.target_aabb = params.target;
  rep.unique_colors = fit.unique_colors;
  const ColorBoxMap map(fit.box, params.target);
  auto out = cloud.colors();
  parallel_for(idx.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) out[idx[k]] = map(colors[k]);
  });
  rep.recolored = idx.size();
  return rep;
}

/// Removes in-box points whose color falls outside the target box (faces
/// inclusive).
inline StepReport apply_delete_rgb_box_outliers(PointCloud& cloud, const OrientedBox& box, const RemapParams& params) {
  params.validate();
  StepReport rep;
  rep.op = "delete_rgb_box";
  rep.box_label = box.label;
  rep.points_before = cloud.size();
  const auto idx = detail::indices_in_box(cloud, box);
  rep.examined = idx.size();
  rep.target_aabb = params.target;
  std::vector<std::uint8_t> keep(cloud.size(), 1);
  for (std::size_t i : idx)
    if (!params.target.contains(cloud.color(i))) keep[i] = 0;
  rep.deleted = cloud.retain(keep);
  return rep;
}

inline PointCloud recolor_rgb_box_remap(PointCloud cloud, const OrientedBox& box, const RemapParams& params) {
  apply_recolor_rgb_box_remap(cloud, box, params);
  return cloud;
}

inline PointCloud delete_rgb_box_outliers(PointCloud cloud, const OrientedBox& box, const RemapParams& params) {
  apply_delete_rgb_box_outliers(cloud, box, params);
  return cloud;
}

}  // namespace cloudtint::recolor
