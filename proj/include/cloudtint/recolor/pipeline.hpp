// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "cloudtint/recolor/remap.hpp"
#include "cloudtint/recolor/sphere.hpp"
#include "cloudtint/recolor/substitute.hpp"

namespace cloudtint::recolor {

struct RecolorSphericalStep {
  OrientedBox box;
  SphereParams params;
};
struct DeleteSphericalStep {
  OrientedBox box;
  SphereParams params;
};
struct RecolorRemapStep {
  OrientedBox box;
  RemapParams params;
};
struct DeleteRgbBoxStep {
  OrientedBox box;
  RemapParams params;
};
struct SubstituteStep {
  std::vector<ingest::JoinedBox> boxes;
};

using EditStep = std::variant<RecolorSphericalStep, DeleteSphericalStep, RecolorRemapStep, DeleteRgbBoxStep, SubstituteStep>;

inline StepReport apply_step(PointCloud& cloud, const EditStep& step) {
  return std::visit(
      [&](const auto& s) -> StepReport {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, RecolorSphericalStep>) return apply_recolor_spherical(cloud, s.box, s.params);
        else if constexpr (std::is_same_v<T, DeleteSphericalStep>)
          return apply_delete_spherical_outliers(cloud, s.box, s.params);
        else if constexpr (std::is_same_v<T, RecolorRemapStep>) return apply_recolor_rgb_box_remap(cloud, s.box, s.params);
        else if constexpr (std::is_same_v<T, DeleteRgbBoxStep>)
          return apply_delete_rgb_box_outliers(cloud, s.box, s.params);
        else return apply_recolor_substitute(cloud, s.boxes);
      },
      step);
}

struct PipelineResult {
  PointCloud cloud;
  EditReport report;
};

/// Applies steps strictly in order, each on the previous output. The first
/// failing step aborts the run; the error carries that step's index.
inline PipelineResult apply_pipeline(PointCloud cloud, const std::vector<EditStep>& steps) {
  PipelineResult out;
  out.report.points_in = cloud.size();
  for (std::size_t i = 0; i < steps.size(); ++i) {
    try {
      out.report.steps.push_back(apply_step(cloud, steps[i]));
    } catch (const Error& e) {
      throw Error(e.code(), "step " + std::to_string(i) + ": " + e.detail(), {e.where().line, e.where().byte_offset, i});
    }
  }
  out.report.points_out = cloud.size();
  out.cloud = std::move(cloud);
  return out;
}

}  // namespace cloudtint::recolor
