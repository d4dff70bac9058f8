// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <charconv>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cloudtint/core/types.hpp"
#include "cloudtint/ingest/box_file.hpp"
#include "cloudtint/io/byte_stream.hpp"

namespace cloudtint::ingest {

struct PaletteFile {
  LabelPalette palette;

  friend bool operator==(const PaletteFile&, const PaletteFile&) = default;
};

/// One entry per line: `<label> <R> <G> <B> <0|1>`. `#` starts a comment,
/// blank lines are ignored, the last field is the enabled flag.
inline PaletteFile parse_palette_file(std::string_view text) {
  PaletteFile out;
  std::uint64_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::array<std::string_view, 6> tok;
    const std::size_t n = io::split_ws(line, tok.data(), tok.size());
    if (n == 0) {
      if (eol == text.size()) break;
      continue;
    }
    const SourceLocation where{line_no, std::nullopt, std::nullopt};
    if (n != 5) throw Error(ErrorCode::SyntaxError, "expected '<label> <R> <G> <B> <0|1>'", where);
    Rgb color;
    for (std::size_t k = 0; k < 3; ++k) {
      long v;
      if (!io::parse_number(tok[1 + k], v)) throw Error(ErrorCode::SyntaxError, "color channel must be an integer", where);
      if (v < 0 || v > 255) throw Error(ErrorCode::RangeError, "color channel outside [0, 255]", where);
      color[k] = static_cast<std::uint8_t>(v);
    }
    if (tok[4] != "0" && tok[4] != "1") throw Error(ErrorCode::SyntaxError, "enabled flag must be 0 or 1", where);
    if (!out.palette.insert({std::string(tok[0]), color, tok[4] == "1"}))
      throw Error(ErrorCode::DuplicateLabel, "label '" + std::string(tok[0]) + "' appears twice", where);
    if (eol == text.size()) break;
  }
  return out;
}

inline PaletteFile load_palette_file(const std::filesystem::path& path) {
  return parse_palette_file(read_text_file(path));
}

/// A box paired with its palette entry. Boxes without an entry are enabled
/// and colorless: usable for deletion and splitting, not substitution.
struct JoinedBox {
  OrientedBox box;
  std::optional<Rgb> color;
  bool enabled = true;

  friend bool operator==(const JoinedBox&, const JoinedBox&) = default;
};

inline std::vector<JoinedBox> join_boxes_palette(const BoxFile& boxes, const PaletteFile& palette,
                                                 std::vector<std::string>* warnings = nullptr) {
  std::vector<JoinedBox> out;
  out.reserve(boxes.boxes.size());
  for (const auto& b : boxes.boxes) {
    if (const PaletteEntry* e = palette.palette.find(b.label)) {
      out.push_back({b, e->color, e->enabled});
    } else {
      if (warnings) {
        std::string msg = "box label '" + b.label + "' has no palette entry";
        if (std::find(warnings->begin(), warnings->end(), msg) == warnings->end()) warnings->push_back(std::move(msg));
      }
      out.push_back({b, std::nullopt, true});
    }
  }
  return out;
}

/// Join without a palette: every box enabled and colorless.
inline std::vector<JoinedBox> join_boxes_palette(const BoxFile& boxes) {
  std::vector<JoinedBox> out;
  for (const auto& b : boxes.boxes) out.push_back({b, std::nullopt, true});
  return out;
}

}  // namespace cloudtint::ingest
