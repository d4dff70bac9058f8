// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "cloudtint/core/geometry.hpp"
#include "cloudtint/io/cloud_io.hpp"

namespace cloudtint::split {

struct Fragment {
  std::string label;
  PointCloud cloud;
  std::vector<std::size_t> source_indices;  // input index of every point, in order
};

struct SplitResult {
  std::vector<Fragment> fragments;  // one per distinct label, first-appearance order
  std::optional<Fragment> remainder;
};

struct SplitOptions {
  bool duplicates = false;      // copy points into every containing box's fragment
  bool emit_remainder = true;
};

/// Boxes sharing a label feed one fragment. Without duplicates each point goes
/// to the first containing box in list order.
inline SplitResult split_by_boxes(const PointCloud& cloud, const std::vector<OrientedBox>& boxes,
                                  const SplitOptions& opts = {}) {
  if (boxes.empty()) throw Error(ErrorCode::NoBoxes, "split needs at least one box");

  SplitResult out;
  std::map<std::string, std::size_t> slot_of;
  std::vector<std::size_t> box_slot;
  std::vector<BoxFrame> frames;
  for (const auto& b : boxes) {
    auto [it, inserted] = slot_of.try_emplace(b.label, out.fragments.size());
    if (inserted) out.fragments.push_back({b.label, cloud.like(), {}});
    box_slot.push_back(it->second);
    frames.emplace_back(b);
  }

  // Assignment pass: bit k of a point's row marks membership of fragment k.
  const std::size_t nfrag = out.fragments.size();
  std::vector<std::uint8_t> member(cloud.size() * nfrag, 0);
  const auto pos = cloud.positions();
  parallel_for(cloud.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      for (std::size_t k = 0; k < frames.size(); ++k) {
        if (!frames[k].contains(pos[i])) continue;
        member[i * nfrag + box_slot[k]] = 1;
        if (!opts.duplicates) break;
      }
    }
  });

  if (opts.emit_remainder) out.remainder = Fragment{"remainder", cloud.like(), {}};
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    bool placed = false;
    for (std::size_t f = 0; f < nfrag; ++f) {
      if (!member[i * nfrag + f]) continue;
      out.fragments[f].cloud.push_from(cloud, i);
      out.fragments[f].source_indices.push_back(i);
      placed = true;
    }
    if (!placed && out.remainder) {
      out.remainder->cloud.push_from(cloud, i);
      out.remainder->source_indices.push_back(i);
    }
  }
  return out;
}

struct WrittenFragment {
  std::string label;
  std::filesystem::path path;
  std::size_t count = 0;
};

/// Replaces path separators and other characters that are unsafe in file
/// names.
inline std::string sanitize_label(std::string_view label) {
  std::string s(label);
  for (char& c : s)
    if (c == '/' || c == '\\' || c == ':' || c == '*' || c == '?' || c == '"' || c == '<' || c == '>' || c == '|' ||
        static_cast<unsigned char>(c) < 0x20)
      c = '_';
  if (s.empty() || s == "." || s == "..") s = "_";
  return s;
}

inline std::string expand_template(std::string_view tmpl, std::string_view label, std::string_view ext) {
  std::string out;
  for (std::size_t i = 0; i < tmpl.size();) {
    if (tmpl.substr(i).starts_with("{label}")) {
      out += label;
      i += 7;
    } else if (tmpl.substr(i).starts_with("{ext}")) {
      out += ext;
      i += 5;
    } else {
      out += tmpl[i++];
    }
  }
  return out;
}

/// Writes one file per fragment plus "remainder.<ext>" and a manifest.json
/// mapping label -> path -> count. Name collisions get "_2", "_3", ...
/// suffixes on the label part. Empty fragments are still written.
inline std::vector<WrittenFragment> write_fragments(const SplitResult& result, const std::filesystem::path& out_dir,
                                                    const io::FormatDescriptor& format,
                                                    std::string_view naming_template = "{label}.{ext}",
                                                    const io::WriteOptions& opts = {},
                                                    io::Diagnostics* diag = nullptr) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create '" + out_dir.string() + "': " + ec.message());
  if (naming_template.find("{label}") == std::string_view::npos)
    throw Error(ErrorCode::InvalidArgument, "naming template must contain {label}");

  const std::string ext(io::to_string(format.kind));
  std::set<std::string> taken{"manifest.json"};
  if (result.remainder) taken.insert("remainder." + ext);

  std::vector<WrittenFragment> written;
  auto emit = [&](const Fragment& f, const std::string& name) {
    const auto path = out_dir / name;
    if (f.cloud.empty() && diag) diag->warn("fragment '" + f.label + "' is empty");
    io::write_cloud(f.cloud, path, format, opts, diag);
    written.push_back({f.label, path, f.cloud.size()});
  };

  for (const auto& f : result.fragments) {
    const std::string base = sanitize_label(f.label);
    std::string name = expand_template(naming_template, base, ext);
    for (int k = 2; taken.count(name); ++k) name = expand_template(naming_template, base + "_" + std::to_string(k), ext);
    taken.insert(name);
    emit(f, name);
  }
  if (result.remainder) emit(*result.remainder, "remainder." + ext);

  nlohmann::json manifest = nlohmann::json::array();
  for (const auto& w : written)
    manifest.push_back({{"label", w.label}, {"path", w.path.filename().string()}, {"count", w.count}});
  std::ofstream mf(out_dir / "manifest.json", std::ios::binary | std::ios::trunc);
  if (!mf) throw Error(ErrorCode::IoError, "cannot write manifest in '" + out_dir.string() + "'");
  mf << manifest.dump(2) << '\n';
  return written;
}

}  // namespace cloudtint::split
