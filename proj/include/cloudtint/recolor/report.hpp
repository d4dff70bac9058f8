// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cloudtint/core/types.hpp"

namespace cloudtint::recolor {

/// Outcome of one edit step.
struct StepReport {
  std::string op;
  std::string box_label;             // empty for multi-box steps
  std::size_t points_before = 0;
  std::size_t examined = 0;          // points inside the step's box(es)
  std::size_t recolored = 0;
  std::size_t deleted = 0;
  std::optional<ColorSphere> sphere;
  std::optional<RgbAabb> source_aabb;
  std::optional<RgbAabb> target_aabb;
  std::optional<std::size_t> unique_colors;
  std::vector<std::string> warnings;
};

struct EditReport {
  std::vector<StepReport> steps;
  std::size_t points_in = 0;
  std::size_t points_out = 0;
};

inline nlohmann::json to_json(const RgbReal& c) { return nlohmann::json::array({c.r, c.g, c.b}); }

inline nlohmann::json to_json(const StepReport& s) {
  nlohmann::json j;
  j["op"] = s.op;
  j["box"] = s.box_label;
  j["points_before"] = s.points_before;
  j["examined"] = s.examined;
  j["recolored"] = s.recolored;
  j["deleted"] = s.deleted;
  if (s.sphere) j["sphere"] = {{"center", to_json(s.sphere->center)}, {"radius", s.sphere->radius}};
  if (s.source_aabb)
    j["source_aabb"] = {{"min", to_json(s.source_aabb->min)},
                        {"max", to_json(s.source_aabb->max)},
                        {"centroid", to_json(s.source_aabb->centroid())}};
  if (s.target_aabb)
    j["target_aabb"] = {{"min", to_json(s.target_aabb->min)},
                        {"max", to_json(s.target_aabb->max)},
                        {"centroid", to_json(s.target_aabb->centroid())}};
  if (s.unique_colors) j["unique_colors"] = *s.unique_colors;
  if (!s.warnings.empty()) j["warnings"] = s.warnings;
  return j;
}

inline nlohmann::json to_json(const EditReport& r) {
  nlohmann::json j;
  j["points_in"] = r.points_in;
  j["points_out"] = r.points_out;
  j["steps"] = nlohmann::json::array();
  for (const auto& s : r.steps) j["steps"].push_back(to_json(s));
  return j;
}

inline std::string format_color(const RgbReal& c) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << '(' << c.r << ", " << c.g << ", " << c.b << ')';
  return os.str();
}

/// Human-readable table, one row per step.
inline std::string to_table(const EditReport& r) {
  std::ostringstream os;
  os << std::left << std::setw(5) << "step" << std::setw(20) << "op" << std::setw(16) << "box" << std::right
     << std::setw(12) << "examined" << std::setw(12) << "recolored" << std::setw(12) << "deleted" << "  fit\n";
  for (std::size_t i = 0; i < r.steps.size(); ++i) {
    const auto& s = r.steps[i];
    os << std::left << std::setw(5) << i << std::setw(20) << s.op << std::setw(16) << (s.box_label.empty() ? "-" : s.box_label)
       << std::right << std::setw(12) << s.examined << std::setw(12) << s.recolored << std::setw(12) << s.deleted << "  ";
    if (s.sphere)
      os << "center " << format_color(s.sphere->center) << " radius " << std::fixed << std::setprecision(3)
         << s.sphere->radius;
    else if (s.source_aabb)
      os << "source " << format_color(s.source_aabb->min) << ".." << format_color(s.source_aabb->max);
    os << '\n';
  }
  os << "points in: " << r.points_in << ", points out: " << r.points_out << '\n';
  return os.str();
}

}  // namespace cloudtint::recolor
