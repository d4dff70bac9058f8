// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "cloudtint/io/format.hpp"
#include "cloudtint/io/las.hpp"
#include "cloudtint/io/pcd.hpp"
#include "cloudtint/io/ply.hpp"
#include "cloudtint/io/text_formats.hpp"

namespace cloudtint::io {

namespace fs = std::filesystem;

namespace detail {

enum class Magic { none, las, ply, pcd };

inline Magic sniff(std::string_view head) {
  if (head.starts_with("LASF")) return Magic::las;
  if (head.starts_with("ply\n") || head.starts_with("ply\r\n") || head == "ply") return Magic::ply;
  // PCD: optional comment lines, then VERSION (or a "# .PCD" banner).
  std::size_t pos = 0;
  while (pos < head.size()) {
    std::size_t eol = head.find('\n', pos);
    std::string_view line = head.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    if (line.starts_with("# .PCD") || line.starts_with("VERSION")) return Magic::pcd;
    if (!line.starts_with("#")) break;
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return Magic::none;
}

inline std::string_view magic_name(Magic m) {
  switch (m) {
    case Magic::las: return "las/laz";
    case Magic::ply: return "ply";
    case Magic::pcd: return "pcd";
    default: return "text";
  }
}

inline std::string read_head(const fs::path& path, std::size_t n = 4096) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  std::string head(n, '\0');
  in.read(head.data(), static_cast<std::streamsize>(n));
  head.resize(static_cast<std::size_t>(in.gcount()));
  return head;
}

inline std::unique_ptr<std::istream> open_input(const fs::path& path) {
  auto in = std::make_unique<std::ifstream>(path, std::ios::binary);
  if (!*in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  return in;
}

}  // namespace detail

/// Chooses the format from the extension, then checks it against the leading
/// bytes. A disagreement is a HeaderMismatch, never a silent override.
/// Attribute flags are the kind's canonical ones.
inline FormatDescriptor detect_format(std::string_view extension, std::string_view head) {
  const auto kind = kind_from_extension(extension);
  if (!kind) throw Error(ErrorCode::UnknownFormat, "unrecognized point cloud extension '" + std::string(extension) + "'");
  const detail::Magic magic = detail::sniff(head);
  auto mismatch = [&] {
    return Error(ErrorCode::HeaderMismatch, "extension says " + std::string(to_string(*kind)) + " but content looks like " +
                                                std::string(detail::magic_name(magic)));
  };
  switch (*kind) {
    case FormatKind::las:
    case FormatKind::laz:
      if (magic != detail::Magic::las) throw mismatch();
      break;
    case FormatKind::ply:
      if (magic != detail::Magic::ply) throw mismatch();
      break;
    case FormatKind::pcd:
      if (magic != detail::Magic::pcd) throw mismatch();
      break;
    default:
      if (magic != detail::Magic::none) throw mismatch();
      break;
  }
  FormatDescriptor d = canonical_descriptor(*kind);
  if (*kind == FormatKind::ply && head.find("format ascii") != std::string_view::npos) d.encoding = Encoding::ascii;
  if (*kind == FormatKind::pcd && head.find("DATA ascii") != std::string_view::npos) d.encoding = Encoding::ascii;
  return d;
}

/// Opens a reader for `in`. LAZ needs an external codec and is reported as
/// CodecUnavailable.
inline std::unique_ptr<PointReader> open_reader(std::unique_ptr<std::istream> in, FormatKind kind) {
  switch (kind) {
    case FormatKind::las: return std::make_unique<LasReader>(std::move(in));
    case FormatKind::laz:
      throw Error(ErrorCode::CodecUnavailable, "LAZ decoding requires a LASzip codec, which is not available");
    case FormatKind::xyz:
    case FormatKind::xyzn:
    case FormatKind::xyzrgb: return std::make_unique<XyzReader>(std::move(in), kind);
    case FormatKind::pts: return std::make_unique<PtsReader>(std::move(in));
    case FormatKind::ply: return std::make_unique<PlyReader>(std::move(in));
    case FormatKind::pcd: return std::make_unique<PcdReader>(std::move(in));
  }
  throw Error(ErrorCode::UnknownFormat, "unsupported format");
}

/// Sniffs and opens `path`; `kind` overrides the extension.
inline std::unique_ptr<PointReader> open_reader(const fs::path& path, std::optional<FormatKind> kind = std::nullopt) {
  const std::string head = detail::read_head(path);
  const FormatDescriptor d =
      kind ? detect_format(to_string(*kind), head) : detect_format(path.extension().string(), head);
  return open_reader(detail::open_input(path), d.kind);
}

/// Full descriptor of an existing file, including attribute flags from its
/// header (and, for pts, its first record).
inline FormatDescriptor detect_format(const fs::path& path) {
  const std::string head = detail::read_head(path);
  FormatDescriptor d = detect_format(path.extension().string(), head);
  if (d.kind == FormatKind::laz || d.kind == FormatKind::xyz || d.kind == FormatKind::xyzn ||
      d.kind == FormatKind::xyzrgb)
    return d;
  return open_reader(detail::open_input(path), d.kind)->info().format;
}

inline std::unique_ptr<PointWriter> open_writer(std::ostream& out, const FormatDescriptor& d,
                                                const WriteOptions& opts = {}) {
  switch (d.kind) {
    case FormatKind::las: return std::make_unique<LasWriter>(out, opts.las_scale);
    case FormatKind::laz:
      throw Error(ErrorCode::CodecUnavailable, "LAZ encoding requires a LASzip codec, which is not available");
    case FormatKind::xyz:
    case FormatKind::xyzn:
    case FormatKind::xyzrgb:
    case FormatKind::pts: return std::make_unique<TextWriter>(out, d.kind);
    case FormatKind::ply: return std::make_unique<PlyWriter>(out, d.encoding);
    case FormatKind::pcd: return std::make_unique<PcdWriter>(out, d.encoding);
  }
  throw Error(ErrorCode::UnknownFormat, "unsupported format");
}

/// Descriptor for writing to `path`: kind from the extension (or override),
/// binary where the format has a binary form unless ascii is requested.
inline FormatDescriptor output_descriptor(const fs::path& path, std::optional<Encoding> encoding = std::nullopt,
                                          std::optional<FormatKind> kind = std::nullopt) {
  if (!kind) kind = kind_from_extension(path.extension().string());
  if (!kind) throw Error(ErrorCode::UnknownFormat, "unrecognized output extension '" + path.extension().string() + "'");
  return canonical_descriptor(*kind, encoding.value_or(Encoding::binary_little_endian));
}

/// Header attributes actually emitted when writing a cloud with the given
/// attributes into format `d`, plus warnings for anything dropped.
inline WriteHeader plan_header(std::uint64_t count, bool has_color, bool has_normals, const FormatDescriptor& d,
                               Diagnostics* diag) {
  WriteHeader h;
  h.count = count;
  h.has_color = d.kind == FormatKind::xyzrgb || (has_color && can_store_color(d.kind));
  h.has_normals = d.kind == FormatKind::xyzn || (has_normals && can_store_normals(d.kind));
  if (diag) {
    if (has_color && !can_store_color(d.kind))
      diag->warn("color dropped: " + std::string(to_string(d.kind)) + " stores no color");
    if (has_normals && !can_store_normals(d.kind))
      diag->warn("normals dropped: " + std::string(to_string(d.kind)) + " stores no normals");
    if (!has_color && d.kind == FormatKind::xyzrgb) diag->warn("input has no color; writing black");
    if (!has_normals && d.kind == FormatKind::xyzn) diag->warn("input has no normals; writing zero normals");
  }
  return h;
}

inline PointCloud read_cloud(PointReader& reader) {
  PointCloud cloud = reader.make_batch();
  if (reader.info().count) cloud.reserve(static_cast<std::size_t>(*reader.info().count));
  PointCloud batch = reader.make_batch();
  while (reader.read(batch, kChunkPoints) > 0)
    for (std::size_t i = 0; i < batch.size(); ++i) cloud.push_from(batch, i);
  return cloud;
}

inline PointCloud read_cloud(std::unique_ptr<std::istream> in, FormatKind kind) {
  return read_cloud(*open_reader(std::move(in), kind));
}

inline PointCloud read_cloud(const fs::path& path, std::optional<FormatKind> kind = std::nullopt) {
  return read_cloud(*open_reader(path, kind));
}

/// Writes the whole cloud; returns the byte count.
inline std::uint64_t write_cloud(const PointCloud& cloud, std::ostream& out, const FormatDescriptor& d,
                                 const WriteOptions& opts = {}, Diagnostics* diag = nullptr) {
  auto writer = open_writer(out, d, opts);
  WriteHeader h = plan_header(cloud.size(), cloud.has_color(), cloud.has_normals(), d, diag);
  if (writer->needs_bounds()) h.bounds = Bounds3::of(cloud.positions());
  writer->begin(h);
  writer->write(cloud);
  return writer->finish();
}

inline std::uint64_t write_cloud(const PointCloud& cloud, const fs::path& path, const FormatDescriptor& d,
                                 const WriteOptions& opts = {}, Diagnostics* diag = nullptr) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot create '" + path.string() + "'");
  const std::uint64_t n = write_cloud(cloud, out, d, opts, diag);
  out.close();
  if (!out) throw Error(ErrorCode::IoError, "failed writing '" + path.string() + "'");
  return n;
}

/// Serializes to an in-memory byte string.
inline std::string encode_cloud(const PointCloud& cloud, const FormatDescriptor& d, const WriteOptions& opts = {}) {
  std::ostringstream out(std::ios::binary);
  write_cloud(cloud, out, d, opts);
  return std::move(out).str();
}

inline PointCloud decode_cloud(std::string bytes, FormatKind kind) {
  return read_cloud(std::make_unique<std::istringstream>(std::move(bytes), std::ios::binary), kind);
}

struct ConvertOptions {
  std::optional<FormatKind> input_kind;
  std::optional<FormatKind> output_kind;
  std::optional<Encoding> output_encoding;
  WriteOptions write;
  std::size_t chunk_points = kChunkPoints;
};

struct ConversionReport {
  FormatDescriptor input;
  FormatDescriptor output;
  std::uint64_t points_written = 0;
  std::uint64_t bytes_written = 0;
  std::size_t passes = 1;  // 2 when a bounds/count pre-pass was needed
  std::vector<std::string> warnings;
};

/// Streaming conversion in fixed-size batches. Formats whose header needs
/// the point count or bounds before any record get a read-only pre-pass, so
/// the full cloud is never resident.
inline ConversionReport convert(const fs::path& in_path, const fs::path& out_path, const ConvertOptions& opts = {}) {
  if (opts.chunk_points == 0) throw Error(ErrorCode::InvalidArgument, "chunk size must be positive");
  ConversionReport report;
  auto reader = open_reader(in_path, opts.input_kind);
  report.input = reader->info().format;
  report.output = output_descriptor(out_path, opts.output_encoding, opts.output_kind);

  Diagnostics diag;
  const bool writes_count_header = report.output.kind != FormatKind::xyz && report.output.kind != FormatKind::xyzn &&
                                   report.output.kind != FormatKind::xyzrgb;
  std::optional<std::uint64_t> count = reader->info().count;
  std::optional<Bounds3> bounds;
  const bool need_bounds = report.output.kind == FormatKind::las;
  if ((writes_count_header && !count) || need_bounds) {
    auto pre = open_reader(in_path, opts.input_kind);
    PointCloud batch = pre->make_batch();
    std::uint64_t n = 0;
    while (pre->read(batch, opts.chunk_points) > 0) {
      if (need_bounds) {
        if (!bounds) bounds = Bounds3{batch.position(0), batch.position(0)};
        for (const Vec3& p : batch.positions()) bounds->extend(p);
      }
      n += batch.size();
    }
    count = n;
    if (need_bounds && !bounds) bounds = Bounds3{};
    report.passes = 2;
  }

  WriteHeader h = plan_header(count.value_or(0), report.input.has_color, report.input.has_normals, report.output, &diag);
  h.bounds = bounds;
  report.output.has_color = h.has_color;
  report.output.has_normals = h.has_normals;
  if (reader->info().narrowed_16bit_color && report.input.has_color && h.has_color)
    diag.warn("16-bit source colors narrowed to 8 bits");
  if (report.output.kind == FormatKind::las)
    diag.warn("positions quantized to LAS scale " + std::to_string(opts.write.las_scale) + " m");

  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot create '" + out_path.string() + "'");
  auto writer = open_writer(out, report.output, opts.write);

  h.count_known = count.has_value();
  writer->begin(h);
  PointCloud batch = reader->make_batch();
  while (reader->read(batch, opts.chunk_points) > 0) {
    writer->write(batch);
    report.points_written += batch.size();
  }
  report.bytes_written = writer->finish();
  out.close();
  if (!out) throw Error(ErrorCode::IoError, "failed writing '" + out_path.string() + "'");
  report.warnings = std::move(diag.warnings);
  return report;
}

}  // namespace cloudtint::io
