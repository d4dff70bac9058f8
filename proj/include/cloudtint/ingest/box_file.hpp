// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cloudtint/core/types.hpp"

namespace cloudtint::ingest {

/// Boxes from a LabelCloud-style export. Order is significant: earlier boxes
/// win overlaps in substitution and splitting.
struct BoxFile {
  std::string source_cloud_name;
  std::vector<OrientedBox> boxes;

  friend bool operator==(const BoxFile&, const BoxFile&) = default;
};

namespace detail {

inline double require_number(const nlohmann::json& obj, const char* group, const char* key, std::size_t index) {
  if (!obj.contains(group) || !obj[group].is_object())
    throw Error(ErrorCode::SchemaError, std::string("missing object '") + group + "'", {std::nullopt, std::nullopt, index});
  const auto& g = obj[group];
  if (!g.contains(key) || !g[key].is_number())
    throw Error(ErrorCode::SchemaError, std::string("missing numeric field '") + group + "." + key + "'",
                {std::nullopt, std::nullopt, index});
  return g[key].get<double>();
}

}  // namespace detail

/// Parses {"filename": ..., "objects": [{"name", "centroid": {x,y,z},
/// "dimensions": {length,width,height}, "rotations": {x,y,z}}]}. Length,
/// width and height map to the local x, y and z extents; rotations are in
/// degrees.
inline BoxFile parse_box_file(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::SyntaxError, std::string("invalid JSON: ") + e.what(),
                {std::nullopt, static_cast<std::uint64_t>(e.byte), std::nullopt});
  }
  if (!doc.is_object()) throw Error(ErrorCode::SchemaError, "box file must be a JSON object");
  BoxFile out;
  if (doc.contains("filename")) {
    if (!doc["filename"].is_string()) throw Error(ErrorCode::SchemaError, "'filename' must be a string");
    out.source_cloud_name = doc["filename"].get<std::string>();
  }
  if (!doc.contains("objects") || !doc["objects"].is_array())
    throw Error(ErrorCode::SchemaError, "box file needs an 'objects' array");
  const auto& objects = doc["objects"];
  out.boxes.reserve(objects.size());
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const auto& o = objects[i];
    if (!o.is_object()) throw Error(ErrorCode::SchemaError, "object is not a JSON object", {std::nullopt, std::nullopt, i});
    if (!o.contains("name") || !o["name"].is_string())
      throw Error(ErrorCode::SchemaError, "missing string field 'name'", {std::nullopt, std::nullopt, i});
    std::string name = o["name"].get<std::string>();
    const auto first = name.find_first_not_of(" \t\r\n");
    name = first == std::string::npos ? std::string{} : name.substr(first, name.find_last_not_of(" \t\r\n") - first + 1);
    if (name.empty()) throw Error(ErrorCode::SchemaError, "empty object name", {std::nullopt, std::nullopt, i});

    const Vec3 centroid{detail::require_number(o, "centroid", "x", i), detail::require_number(o, "centroid", "y", i),
                        detail::require_number(o, "centroid", "z", i)};
    const Vec3 dims{detail::require_number(o, "dimensions", "length", i),
                    detail::require_number(o, "dimensions", "width", i),
                    detail::require_number(o, "dimensions", "height", i)};
    const Vec3 rot{detail::require_number(o, "rotations", "x", i), detail::require_number(o, "rotations", "y", i),
                   detail::require_number(o, "rotations", "z", i)};
    for (std::size_t k = 0; k < 3; ++k)
      if (!(dims[k] > 0.0))
        throw Error(ErrorCode::SchemaError, "dimensions must be positive", {std::nullopt, std::nullopt, i});
    try {
      out.boxes.push_back(make_box(std::move(name), centroid, dims, rot));
    } catch (const Error& e) {
      throw Error(e.code(), e.detail(), {std::nullopt, std::nullopt, i});
    }
  }
  return out;
}

/// Inverse of parse_box_file for normalized boxes.
inline std::string serialize_box_file(const BoxFile& file) {
  nlohmann::json doc;
  doc["filename"] = file.source_cloud_name;
  doc["objects"] = nlohmann::json::array();
  for (const auto& b : file.boxes) {
    doc["objects"].push_back({
        {"name", b.label},
        {"centroid", {{"x", b.centroid.x}, {"y", b.centroid.y}, {"z", b.centroid.z}}},
        {"dimensions", {{"length", b.dimensions.x}, {"width", b.dimensions.y}, {"height", b.dimensions.z}}},
        {"rotations", {{"x", b.rotations.x}, {"y", b.rotations.y}, {"z", b.rotations.z}}},
    });
  }
  return doc.dump(2) + "\n";
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

inline BoxFile load_box_file(const std::filesystem::path& path) { return parse_box_file(read_text_file(path)); }

}  // namespace cloudtint::ingest
