// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cloudtint/core/color_stats.hpp"
#include "cloudtint/ingest/box_file.hpp"
#include "cloudtint/ingest/palette.hpp"
#include "cloudtint/io/cloud_io.hpp"
#include "cloudtint/parallel.hpp"
#include "cloudtint/recolor/pipeline.hpp"
#include "cloudtint/split/splitter.hpp"

namespace cloudtint::cli {

namespace fs = std::filesystem;
using nlohmann::json;

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kIo = 3 };

inline int exit_code_for(ErrorCode code) {
  if (code == ErrorCode::IoError) return kIo;
  if (code == ErrorCode::InvalidArgument) return kUsage;
  return kData;
}

enum class Subcommand { convert, recolor, del, segment, split, info };

/// Everything parsed from argv.
struct JobConfig {
  Subcommand subcommand = Subcommand::info;
  std::string cloud_path;
  std::string out_path;  // file, or directory for split
  std::string boxes_path;
  std::string palette_path;

  std::string mode = "spherical";  // spherical | rgb-box
  std::optional<double> percentile;
  std::optional<double> radius;
  std::string outlier_mode = "project";  // project | nearest
  std::string target_min, target_max;

  std::string in_format, out_format;
  bool ascii = false;
  double las_scale = 1e-4;

  bool duplicates = false;
  bool no_remainder = false;
  std::string name_template = "{label}.{ext}";

  bool dry_run = false;
  bool json_stdout = false;
  std::string report_path;
  unsigned threads = 0;
  int verbosity = 0;

  void validate() const {
    const bool edits = subcommand == Subcommand::recolor || subcommand == Subcommand::del;
    if ((edits || subcommand == Subcommand::segment || subcommand == Subcommand::split) && boxes_path.empty())
      throw Error(ErrorCode::InvalidArgument, "--boxes is required");
    if (subcommand == Subcommand::segment && palette_path.empty())
      throw Error(ErrorCode::InvalidArgument, "--palette is required");
    if (edits && mode != "spherical" && mode != "rgb-box")
      throw Error(ErrorCode::InvalidArgument, "--mode must be 'spherical' or 'rgb-box'");
    if (edits && mode == "rgb-box" && (target_min.empty() || target_max.empty()))
      throw Error(ErrorCode::InvalidArgument, "--mode rgb-box needs --target-min and --target-max");
    if (outlier_mode != "project" && outlier_mode != "nearest")
      throw Error(ErrorCode::InvalidArgument, "--outlier-mode must be 'project' or 'nearest'");
    if (!(las_scale > 0.0)) throw Error(ErrorCode::InvalidArgument, "--las-scale must be positive");
  }
};

namespace detail {

/// Parses "r,g,b" with each component a real in [0, 255].
inline RgbReal parse_rgb_triple(const std::string& text, const char* flag) {
  RgbReal out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t end = i < 2 ? text.find(',', start) : text.size();
    if (end == std::string::npos) break;
    const std::string tok = text.substr(start, end - start);
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size() || !(v >= 0.0 && v <= 255.0))
      throw Error(ErrorCode::InvalidArgument, std::string(flag) + " expects r,g,b with components in [0, 255]");
    out[i] = v;
    start = end + 1;
    if (i == 2) return out;
  }
  throw Error(ErrorCode::InvalidArgument, std::string(flag) + " expects r,g,b with components in [0, 255]");
}

inline std::optional<io::FormatKind> format_flag(const std::string& name, const char* flag) {
  if (name.empty()) return std::nullopt;
  auto k = io::kind_from_extension(name);
  if (!k) throw Error(ErrorCode::InvalidArgument, std::string(flag) + ": unknown format '" + name + "'");
  return k;
}

/// Reruns `fn`, prefixing any library error with the file it concerns.
template <typename Fn>
auto with_path(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.detail(), e.where());
  }
}

inline json to_json(const io::FormatDescriptor& d) {
  return {{"format", std::string(io::to_string(d.kind))},
          {"encoding", std::string(io::to_string(d.encoding))},
          {"color", d.has_color},
          {"normals", d.has_normals}};
}

inline json to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

class Job {
 public:
  Job(const JobConfig& cfg, std::ostream& out, std::ostream& err) : cfg_(cfg), out_(out), err_(err) {}

  int run() {
    set_thread_cap(cfg_.threads);
    report_["command"] = command_name();
    switch (cfg_.subcommand) {
      case Subcommand::convert: do_convert(); break;
      case Subcommand::recolor:
      case Subcommand::del:
      case Subcommand::segment: do_edit(); break;
      case Subcommand::split: do_split(); break;
      case Subcommand::info: do_info(); break;
    }
    if (!warnings_.empty()) report_["warnings"] = warnings_;
    emit_report();
    return kOk;
  }

 private:
  std::string command_name() const {
    switch (cfg_.subcommand) {
      case Subcommand::convert: return "convert";
      case Subcommand::recolor: return "recolor";
      case Subcommand::del: return "delete";
      case Subcommand::segment: return "segment";
      case Subcommand::split: return "split";
      case Subcommand::info: return "info";
    }
    return "";
  }

  io::WriteOptions write_options() const {
    io::WriteOptions o;
    o.las_scale = cfg_.las_scale;
    return o;
  }

  std::optional<io::Encoding> encoding() const {
    return cfg_.ascii ? std::optional(io::Encoding::ascii) : std::nullopt;
  }

  void warn(const std::string& w) {
    if (std::find(warnings_.begin(), warnings_.end(), w) == warnings_.end()) warnings_.push_back(w);
    if (cfg_.verbosity > 0) err_ << "warning: " << w << '\n';
  }

  void emit_report() {
    if (!cfg_.report_path.empty()) {
      std::ofstream f(cfg_.report_path, std::ios::binary | std::ios::trunc);
      if (!f) throw Error(ErrorCode::IoError, "cannot create report '" + cfg_.report_path + "'");
      f << report_.dump(2) << '\n';
      if (!f.flush()) throw Error(ErrorCode::IoError, "failed writing report '" + cfg_.report_path + "'");
    }
    if (cfg_.json_stdout) {
      out_ << report_.dump(2) << '\n';
    } else {
      out_ << table_;
      for (const auto& w : warnings_) out_ << "warning: " << w << '\n';
    }
  }

  void do_convert() {
    io::ConvertOptions o;
    o.input_kind = format_flag(cfg_.in_format, "--in-format");
    o.output_kind = format_flag(cfg_.out_format, "--out-format");
    o.output_encoding = encoding();
    o.write = write_options();
    const io::ConversionReport r = io::convert(cfg_.cloud_path, cfg_.out_path, o);
    for (const auto& w : r.warnings) warn(w);
    report_["input"] = {{"path", cfg_.cloud_path}, {"descriptor", to_json(r.input)}};
    report_["output"] = {{"path", cfg_.out_path}, {"descriptor", to_json(r.output)}};
    report_["parameters"] = {{"las_scale", cfg_.las_scale}, {"threads", cfg_.threads}};
    report_["points_written"] = r.points_written;
    report_["bytes_written"] = r.bytes_written;
    report_["passes"] = r.passes;
    std::ostringstream os;
    os << io::to_string(r.input.kind) << " -> " << io::to_string(r.output.kind) << " ("
       << io::to_string(r.output.encoding) << "): " << r.points_written << " points, " << r.bytes_written
       << " bytes, " << r.passes << (r.passes == 1 ? " pass\n" : " passes\n");
    table_ = os.str();
  }

  recolor::SphereParams sphere_params() const {
    recolor::SphereParams p;
    if (cfg_.radius) p.radius = recolor::AbsoluteRadius{*cfg_.radius};
    else p.radius = recolor::PercentileRadius{cfg_.percentile.value_or(90.0)};
    p.outlier_mode = cfg_.outlier_mode == "nearest" ? recolor::OutlierMode::nearest_inlier_spatial
                                                    : recolor::OutlierMode::project_to_surface;
    p.validate();
    return p;
  }

  recolor::RemapParams remap_params() const {
    recolor::RemapParams p;
    p.target = {parse_rgb_triple(cfg_.target_min, "--target-min"), parse_rgb_triple(cfg_.target_max, "--target-max")};
    p.validate();
    return p;
  }

  json parameters() const {
    json p;
    p["threads"] = cfg_.threads;
    p["las_scale"] = cfg_.las_scale;
    if (cfg_.subcommand == Subcommand::segment) return p;
    p["mode"] = cfg_.mode;
    if (cfg_.mode == "spherical") {
      if (cfg_.radius) p["radius"] = *cfg_.radius;
      else p["percentile"] = cfg_.percentile.value_or(90.0);
      if (cfg_.subcommand == Subcommand::recolor) p["outlier_mode"] = cfg_.outlier_mode;
    } else {
      const auto t = remap_params().target;
      p["target_min"] = recolor::to_json(t.min);
      p["target_max"] = recolor::to_json(t.max);
    }
    return p;
  }

  std::vector<ingest::JoinedBox> load_joined() {
    const ingest::BoxFile boxes = with_path(cfg_.boxes_path, [&] { return ingest::load_box_file(cfg_.boxes_path); });
    if (boxes.boxes.empty()) throw Error(ErrorCode::NoBoxes, cfg_.boxes_path + ": box file lists no boxes");
    if (cfg_.palette_path.empty()) return ingest::join_boxes_palette(boxes);
    const ingest::PaletteFile pal =
        with_path(cfg_.palette_path, [&] { return ingest::load_palette_file(cfg_.palette_path); });
    std::vector<std::string> w;
    auto joined = ingest::join_boxes_palette(boxes, pal, &w);
    for (const auto& s : w) warn(s);
    return joined;
  }

  PointCloud load_cloud() {
    return with_path(cfg_.cloud_path, [&] {
      auto reader = io::open_reader(cfg_.cloud_path, format_flag(cfg_.in_format, "--in-format"));
      if (reader->info().narrowed_16bit_color) warn("16-bit source colors narrowed to 8 bits");
      input_desc_ = reader->info().format;
      report_["input"] = {{"path", cfg_.cloud_path}, {"descriptor", to_json(input_desc_)}};
      return io::read_cloud(*reader);
    });
  }

  std::vector<recolor::EditStep> build_steps(const std::vector<ingest::JoinedBox>& joined) const {
    std::vector<recolor::EditStep> steps;
    if (cfg_.subcommand == Subcommand::segment) {
      steps.push_back(recolor::SubstituteStep{joined});
      return steps;
    }
    const bool recolor = cfg_.subcommand == Subcommand::recolor;
    for (const auto& j : joined) {
      if (!j.enabled) continue;
      if (cfg_.mode == "spherical") {
        if (recolor) steps.push_back(recolor::RecolorSphericalStep{j.box, sphere_params()});
        else steps.push_back(recolor::DeleteSphericalStep{j.box, sphere_params()});
      } else {
        if (recolor) steps.push_back(recolor::RecolorRemapStep{j.box, remap_params()});
        else steps.push_back(recolor::DeleteRgbBoxStep{j.box, remap_params()});
      }
    }
    if (steps.empty()) throw Error(ErrorCode::NoEnabledBoxes, "every box is disabled by the palette");
    return steps;
  }

  void do_edit() {
    const auto out_desc = cfg_.dry_run ? io::FormatDescriptor{}
                                       : io::output_descriptor(cfg_.out_path, encoding(),
                                                               format_flag(cfg_.out_format, "--out-format"));
    report_["parameters"] = parameters();
    const auto joined = load_joined();
    const auto steps = build_steps(joined);
    PointCloud cloud = load_cloud();
    if (!cloud.has_color() && cfg_.subcommand != Subcommand::segment)
      throw Error(ErrorCode::MissingColor, cfg_.cloud_path + ": input carries no color");

    recolor::PipelineResult result = recolor::apply_pipeline(std::move(cloud), steps);
    for (const auto& s : result.report.steps)
      for (const auto& w : s.warnings) warn(w);
    report_["edit"] = recolor::to_json(result.report);
    report_["dry_run"] = cfg_.dry_run;
    table_ = recolor::to_table(result.report);
    if (cfg_.dry_run) return;

    io::Diagnostics diag;
    const auto bytes = io::write_cloud(result.cloud, cfg_.out_path, out_desc, write_options(), &diag);
    for (const auto& w : diag.warnings) warn(w);
    const auto h = io::plan_header(0, result.cloud.has_color(), result.cloud.has_normals(), out_desc, nullptr);
    io::FormatDescriptor written = out_desc;
    written.has_color = h.has_color;
    written.has_normals = h.has_normals;
    report_["output"] = {{"path", cfg_.out_path},
                         {"descriptor", to_json(written)},
                         {"points_written", result.cloud.size()},
                         {"bytes_written", bytes}};
  }

  void do_split() {
    const auto kind = format_flag(cfg_.out_format, "--format");
    report_["parameters"] = {{"threads", cfg_.threads},
                             {"las_scale", cfg_.las_scale},
                             {"duplicates", cfg_.duplicates},
                             {"remainder", !cfg_.no_remainder},
                             {"template", cfg_.name_template}};
    const auto joined = load_joined();
    std::vector<OrientedBox> boxes;
    for (const auto& j : joined)
      if (j.enabled) boxes.push_back(j.box);
    if (boxes.empty()) throw Error(ErrorCode::NoEnabledBoxes, "every box is disabled by the palette");
    const PointCloud cloud = load_cloud();
    const io::FormatKind out_kind = kind.value_or(input_desc_.kind);
    const auto desc = io::canonical_descriptor(out_kind, encoding().value_or(io::Encoding::binary_little_endian));

    const auto result = split::split_by_boxes(cloud, boxes, {cfg_.duplicates, !cfg_.no_remainder});
    if (cfg_.dry_run) {
      report_["fragments"] = json::array();
      std::ostringstream os;
      for (const auto& f : result.fragments) {
        report_["fragments"].push_back({{"label", f.label}, {"count", f.cloud.size()}});
        os << f.label << ": " << f.cloud.size() << " points\n";
      }
      if (result.remainder) {
        report_["remainder"] = result.remainder->cloud.size();
        os << "remainder: " << result.remainder->cloud.size() << " points\n";
      }
      report_["dry_run"] = true;
      table_ = os.str();
      return;
    }
    io::Diagnostics diag;
    const auto written =
        split::write_fragments(result, cfg_.out_path, desc, cfg_.name_template, write_options(), &diag);
    for (const auto& w : diag.warnings) warn(w);
    report_["dry_run"] = false;
    report_["out_dir"] = cfg_.out_path;
    report_["fragments"] = json::array();
    std::ostringstream os;
    for (const auto& w : written) {
      report_["fragments"].push_back({{"label", w.label}, {"path", w.path.filename().string()}, {"count", w.count}});
      os << w.label << ": " << w.count << " points -> " << w.path.string() << '\n';
    }
    table_ = os.str();
  }

  void do_info() {
    with_path(cfg_.cloud_path, [&] {
      auto reader = io::open_reader(cfg_.cloud_path, format_flag(cfg_.in_format, "--in-format"));
      const auto& info = reader->info();
      std::uint64_t n = 0;
      std::optional<io::Bounds3> bounds;
      std::array<std::uint64_t, 3> sum{};
      std::vector<std::uint8_t> seen(info.format.has_color ? (1u << 24) / 8 : 0, 0);
      std::size_t unique = 0;
      PointCloud batch = reader->make_batch();
      while (reader->read(batch, io::kChunkPoints) > 0) {
        if (!bounds) bounds = io::Bounds3{batch.position(0), batch.position(0)};
        for (const Vec3& p : batch.positions()) bounds->extend(p);
        if (info.format.has_color) {
          for (const Rgb& c : batch.colors()) {
            sum[0] += c.r;
            sum[1] += c.g;
            sum[2] += c.b;
            const std::uint32_t key = (std::uint32_t{c.r} << 16) | (std::uint32_t{c.g} << 8) | c.b;
            auto& byte = seen[key >> 3];
            const std::uint8_t bit = static_cast<std::uint8_t>(1u << (key & 7));
            if (!(byte & bit)) {
              byte |= bit;
              ++unique;
            }
          }
        }
        n += batch.size();
      }
      report_["input"] = {{"path", cfg_.cloud_path}, {"descriptor", to_json(info.format)}};
      report_["points"] = n;
      std::ostringstream os;
      os << "format:   " << io::to_string(info.format.kind) << " (" << io::to_string(info.format.encoding) << ")\n"
         << "points:   " << n << '\n'
         << "color:    " << (info.format.has_color ? (info.narrowed_16bit_color ? "yes (16-bit source)" : "yes") : "no")
         << '\n'
         << "normals:  " << (info.format.has_normals ? "yes" : "no") << '\n';
      if (bounds) {
        report_["bounds"] = {{"min", to_json(bounds->min)}, {"max", to_json(bounds->max)}};
        os << std::setprecision(10) << "bounds:   [" << bounds->min.x << ", " << bounds->min.y << ", "
           << bounds->min.z << "] .. [" << bounds->max.x << ", " << bounds->max.y << ", " << bounds->max.z << "]\n";
      }
      if (info.format.has_color && n > 0) {
        const RgbReal mean{static_cast<double>(sum[0]) / n, static_cast<double>(sum[1]) / n,
                           static_cast<double>(sum[2]) / n};
        report_["mean_color"] = recolor::to_json(mean);
        report_["unique_colors"] = unique;
        os << "mean rgb: " << recolor::format_color(mean) << '\n' << "unique:   " << unique << " colors\n";
      }
      table_ = os.str();
      return 0;
    });
  }

  const JobConfig& cfg_;
  std::ostream& out_;
  std::ostream& err_;
  io::FormatDescriptor input_desc_;
  json report_ = json::object();
  std::vector<std::string> warnings_;
  std::string table_;
};

}  // namespace detail

/// Runs one job. argv[0] is the program name. Never throws.
inline int run(const std::vector<std::string>& argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  JobConfig cfg;
  CLI::App app{"Edit, split and convert colored point clouds.", "cloudtint"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  cfg.threads = thread_cap_from_env();
  app.add_option("--threads", cfg.threads, "Worker thread cap, 0 = one per core (default from CLOUDTINT_THREADS)")
      ->capture_default_str();
  app.add_option("--report", cfg.report_path, "Also write the JSON report to this file");
  app.add_flag("--json", cfg.json_stdout, "Print the JSON report instead of the table");
  app.add_option("--las-scale", cfg.las_scale, "LAS coordinate scale in meters")->capture_default_str();
  app.add_flag("--ascii", cfg.ascii, "Write ascii encoding for ply/pcd outputs");
  app.add_flag("-v,--verbose", cfg.verbosity, "Echo warnings to stderr");

  auto add_format_flags = [&](CLI::App* sub) {
    sub->add_option("--in-format", cfg.in_format, "Input format, overriding the extension");
    sub->add_option("--out-format", cfg.out_format, "Output format, overriding the extension");
  };

  auto* convert = app.add_subcommand("convert", "Convert between point cloud formats (streaming)");
  convert->add_option("input", cfg.cloud_path, "Input cloud")->required();
  convert->add_option("output", cfg.out_path, "Output cloud")->required();
  add_format_flags(convert);

  auto add_edit_flags = [&](CLI::App* sub, bool recolor) {
    sub->add_option("--cloud", cfg.cloud_path, "Input cloud")->required();
    sub->add_option("--boxes", cfg.boxes_path, "Bounding-box JSON file")->required();
    sub->add_option("--palette", cfg.palette_path, "Label palette; disabled labels are skipped");
    sub->add_option("--out", cfg.out_path, "Output cloud");
    sub->add_option("--mode", cfg.mode, "spherical | rgb-box")->capture_default_str();
    auto* pct = sub->add_option("--percentile", cfg.percentile, "Sphere radius as a distance percentile (default 90)");
    auto* rad = sub->add_option("--radius", cfg.radius, "Absolute sphere radius in RGB units");
    pct->excludes(rad);
    if (recolor) sub->add_option("--outlier-mode", cfg.outlier_mode, "project | nearest")->capture_default_str();
    sub->add_option("--target-min", cfg.target_min, "Target color box minimum r,g,b");
    sub->add_option("--target-max", cfg.target_max, "Target color box maximum r,g,b");
    sub->add_flag("--dry-run", cfg.dry_run, "Report statistics without writing output");
    add_format_flags(sub);
  };
  auto* recolor = app.add_subcommand("recolor", "Recolor points inside boxes");
  add_edit_flags(recolor, true);
  auto* del = app.add_subcommand("delete", "Delete color outliers inside boxes");
  add_edit_flags(del, false);

  auto* segment = app.add_subcommand("segment", "Paint boxes with palette colors and drop everything else");
  segment->add_option("--cloud", cfg.cloud_path, "Input cloud")->required();
  segment->add_option("--boxes", cfg.boxes_path, "Bounding-box JSON file")->required();
  segment->add_option("--palette", cfg.palette_path, "Label palette")->required();
  segment->add_option("--out", cfg.out_path, "Output cloud");
  segment->add_flag("--dry-run", cfg.dry_run, "Report statistics without writing output");
  add_format_flags(segment);

  auto* splitc = app.add_subcommand("split", "Split a cloud into one file per box label");
  splitc->add_option("--cloud", cfg.cloud_path, "Input cloud")->required();
  splitc->add_option("--boxes", cfg.boxes_path, "Bounding-box JSON file")->required();
  splitc->add_option("--palette", cfg.palette_path, "Label palette; disabled labels are skipped");
  splitc->add_option("--out-dir", cfg.out_path, "Output directory")->required();
  splitc->add_option("--format", cfg.out_format, "Fragment format (default: input format)");
  splitc->add_option("--in-format", cfg.in_format, "Input format, overriding the extension");
  splitc->add_flag("--duplicates", cfg.duplicates, "Copy points into every containing box");
  splitc->add_flag("--no-remainder", cfg.no_remainder, "Do not write points outside all boxes");
  splitc->add_option("--template", cfg.name_template, "Fragment file name template")->capture_default_str();
  splitc->add_flag("--dry-run", cfg.dry_run, "Report fragment sizes without writing");

  auto* info = app.add_subcommand("info", "Describe a point cloud file");
  info->add_option("input", cfg.cloud_path, "Input cloud")->required();
  info->add_option("--in-format", cfg.in_format, "Input format, overriding the extension");

  std::vector<std::string> args(argv.size() > 1 ? argv.begin() + 1 : argv.end(), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  if (*convert) cfg.subcommand = Subcommand::convert;
  else if (*recolor) cfg.subcommand = Subcommand::recolor;
  else if (*del) cfg.subcommand = Subcommand::del;
  else if (*segment) cfg.subcommand = Subcommand::segment;
  else if (*splitc) cfg.subcommand = Subcommand::split;
  else cfg.subcommand = Subcommand::info;

  try {
    cfg.validate();
    const bool edits = cfg.subcommand == Subcommand::recolor || cfg.subcommand == Subcommand::del ||
                       cfg.subcommand == Subcommand::segment;
    if (edits && !cfg.dry_run && cfg.out_path.empty())
      throw Error(ErrorCode::InvalidArgument, "--out is required unless --dry-run is given");
    return detail::Job(cfg, out, err).run();
  } catch (const Error& e) {
    err << "cloudtint: error: " << e.what() << '\n';
    if (e.code() == ErrorCode::InvalidArgument) err << "Run with --help for more information.\n";
    return exit_code_for(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "cloudtint: error: IoError: " << e.what() << '\n';
    return kIo;
  } catch (const std::bad_alloc&) {
    err << "cloudtint: error: out of memory\n";
    return kIo;
  } catch (const std::exception& e) {
    err << "cloudtint: error: " << e.what() << '\n';
    return kData;
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace cloudtint::cli
