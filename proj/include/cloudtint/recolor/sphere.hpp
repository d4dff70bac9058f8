// SPDX-License-Identifier: Apache-2.0

// Spherical color cleanup: fit a sphere around the mean color of the points
// in a box, then pull outlying colors back inside it or delete them.

#pragma once

#include <algorithm>
#include <cmath>
#include <variant>
#include <vector>

#include "cloudtint/core/color_stats.hpp"
#include "cloudtint/core/geometry.hpp"
#include "cloudtint/recolor/kdtree.hpp"
#include "cloudtint/recolor/report.hpp"

namespace cloudtint::recolor {

struct PercentileRadius {
  double q = 90.0;  // nearest-rank percentile of distances, in (0, 100]
};

struct AbsoluteRadius {
  double r = 0.0;
};

enum class OutlierMode {
  project_to_surface,     // move radially onto the sphere
  nearest_inlier_spatial  // copy the color of the spatially nearest inlier
};

struct SphereParams {
  std::variant<PercentileRadius, AbsoluteRadius> radius = PercentileRadius{};
  OutlierMode outlier_mode = OutlierMode::project_to_surface;

  void validate() const {
    if (const auto* p = std::get_if<PercentileRadius>(&radius)) {
      if (!(p->q > 0.0 && p->q <= 100.0)) throw Error(ErrorCode::InvalidArgument, "percentile must lie in (0, 100]");
    } else if (!(std::get<AbsoluteRadius>(radius).r >= 0.0) || !std::isfinite(std::get<AbsoluteRadius>(radius).r)) {
      throw Error(ErrorCode::InvalidArgument, "radius must be a non-negative number");
    }
  }
};

/// Smallest sample whose rank is at least q% of n (no interpolation).
/// Reorders `values`.
inline double nearest_rank_percentile(std::vector<double>& values, double q) {
  if (values.empty()) throw Error(ErrorCode::EmptySelection, "percentile of an empty sample");
  const double n = static_cast<double>(values.size());
  auto rank = static_cast<std::size_t>(std::ceil(q * n / 100.0 - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  auto kth = values.begin() + static_cast<std::ptrdiff_t>(rank - 1);
  std::nth_element(values.begin(), kth, values.end());
  return *kth;
}

inline ColorSphere fit_color_sphere(std::span<const Rgb> colors, const SphereParams& params) {
  params.validate();
  ColorSphere s;
  s.center = mean_color(colors);
  if (const auto* p = std::get_if<PercentileRadius>(&params.radius)) {
    std::vector<double> d(colors.size());
    for (std::size_t i = 0; i < colors.size(); ++i) d[i] = color_distance(colors[i], s.center);
    s.radius = nearest_rank_percentile(d, p->q);
  } else {
    s.radius = std::get<AbsoluteRadius>(params.radius).r;
  }
  return s;
}

/// Radial projection of c onto the sphere surface; colors at the center (or a
/// zero radius) map to the center.
inline Rgb project_to_sphere(Rgb c, const ColorSphere& s) {
  const double d = color_distance(c, s.center);
  if (s.radius == 0.0 || d == 0.0) return quantize(s.center);
  const double k = s.radius / d;
  const RgbReal v{c};
  return quantize({s.center.r + (v.r - s.center.r) * k, s.center.g + (v.g - s.center.g) * k,
                   s.center.b + (v.b - s.center.b) * k});
}

namespace detail {

inline std::vector<std::size_t> indices_in_box(const PointCloud& cloud, const OrientedBox& box) {
  const auto mask = select_in_box(cloud, box);
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) idx.push_back(i);
  if (idx.empty()) throw Error(ErrorCode::EmptySelection, "box '" + box.label + "' contains no points");
  return idx;
}

inline std::vector<Rgb> gather_colors(const PointCloud& cloud, const std::vector<std::size_t>& idx) {
  std::vector<Rgb> out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out[i] = cloud.color(idx[i]);
  return out;
}

}  // namespace detail

/// Recolors in place. Statistics are fitted once over the pre-edit colors.
inline StepReport apply_recolor_spherical(PointCloud& cloud, const OrientedBox& box, const SphereParams& params) {
  StepReport rep;
  rep.op = "recolor_spherical";
  rep.box_label = box.label;
  rep.points_before = cloud.size();
  const auto idx = detail::indices_in_box(cloud, box);
  const auto colors = detail::gather_colors(cloud, idx);
  const ColorSphere sphere = fit_color_sphere(colors, params);
  rep.examined = idx.size();
  rep.sphere = sphere;

  std::vector<std::size_t> inliers, outliers;
  for (std::size_t k = 0; k < idx.size(); ++k)
    (color_distance(colors[k], sphere.center) > sphere.radius ? outliers : inliers).push_back(idx[k]);
  rep.recolored = outliers.size();

  auto out_colors = cloud.colors();
  OutlierMode mode = params.outlier_mode;
  if (mode == OutlierMode::nearest_inlier_spatial && inliers.empty() && !outliers.empty()) {
    rep.warnings.push_back("no inlier colors inside the sphere; projected outliers onto the sphere instead");
    mode = OutlierMode::project_to_surface;
  }
  if (mode == OutlierMode::project_to_surface) {
    parallel_for(outliers.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t k = b; k < e; ++k) out_colors[outliers[k]] = project_to_sphere(out_colors[outliers[k]], sphere);
    });
  } else {
    const KdTree3 tree(cloud.positions(), inliers);
    std::vector<Rgb> replacement(outliers.size());
    parallel_for(outliers.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t k = b; k < e; ++k) replacement[k] = cloud.color(tree.nearest(cloud.position(outliers[k])));
    }, 4096);
    for (std::size_t k = 0; k < outliers.size(); ++k) out_colors[outliers[k]] = replacement[k];
  }
  return rep;
}

/// Removes in-box points whose color lies strictly outside the fitted sphere.
inline StepReport apply_delete_spherical_outliers(PointCloud& cloud, const OrientedBox& box,
                                                  const SphereParams& params) {
  StepReport rep;
  rep.op = "delete_spherical";
  rep.box_label = box.label;
  rep.points_before = cloud.size();
  const auto idx = detail::indices_in_box(cloud, box);
  const auto colors = detail::gather_colors(cloud, idx);
  const ColorSphere sphere = fit_color_sphere(colors, params);
  rep.examined = idx.size();
  rep.sphere = sphere;
  std::vector<std::uint8_t> keep(cloud.size(), 1);
  for (std::size_t k = 0; k < idx.size(); ++k)
    if (color_distance(colors[k], sphere.center) > sphere.radius) keep[idx[k]] = 0;
  rep.deleted = cloud.retain(keep);
  return rep;
}

inline PointCloud recolor_spherical(PointCloud cloud, const OrientedBox& box, const SphereParams& params) {
  apply_recolor_spherical(cloud, box, params);
  return cloud;
}

inline PointCloud delete_spherical_outliers(PointCloud cloud, const OrientedBox& box, const SphereParams& params) {
  apply_delete_spherical_outliers(cloud, box, params);
  return cloud;
}

}  // namespace cloudtint::recolor
