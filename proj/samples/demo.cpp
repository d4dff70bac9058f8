// SPDX-License-Identifier: Apache-2.0

// Builds a small synthetic scene, then cleans, recolors, segments and splits
// it with the sample box file and palette.
//
//   cloudtint-demo <samples dir> <output dir>

#include <filesystem>
#include <iostream>
#include <random>

#include "cloudtint/cloudtint.hpp"

namespace ct = cloudtint;
namespace fs = std::filesystem;

static ct::PointCloud make_scene(std::uint32_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 12.0);
  auto channel = [](double v) { return static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0)); };

  ct::PointCloud cloud(true);
  // Foliage: green with some noise, plus sky-colored speckles from the scan.
  for (int i = 0; i < 20000; ++i) {
    const ct::Vec3 p{u(rng) * 3.6 - 1.8, u(rng) * 3.6 - 1.8, 0.2 + u(rng) * 5.6};
    ct::Rgb c{channel(50 + noise(rng)), channel(120 + noise(rng)), channel(40 + noise(rng))};
    if (u(rng) < 0.05) c = {channel(200 + u(rng) * 40), channel(225 + u(rng) * 30), 250};
    cloud.push_back(p, c);
  }
  // A car body in shades of grey.
  for (int i = 0; i < 8000; ++i) {
    const double x = u(rng) * 4.0 - 2.0, y = u(rng) * 1.6 - 0.8;
    const double a = 30.0 * 3.14159265358979 / 180.0;
    const ct::Vec3 p{8.0 + x * std::cos(a) - y * std::sin(a), 1.0 + x * std::sin(a) + y * std::cos(a),
                     0.1 + u(rng) * 1.3};
    const auto g = channel(110 + noise(rng));
    cloud.push_back(p, {g, g, static_cast<std::uint8_t>(g / 2 + 60)});
  }
  // Ground.
  for (int i = 0; i < 12000; ++i) {
    const ct::Vec3 p{u(rng) * 20.0 - 6.0, u(rng) * 20.0 - 10.0, -0.05};
    cloud.push_back(p, {channel(90 + noise(rng)), channel(80 + noise(rng)), channel(60 + noise(rng))});
  }
  return cloud;
}

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: " << argv[0] << " <samples dir> <output dir>\n";
    return 1;
  }
  const fs::path samples = argv[1], out = argv[2];
  try {
    fs::create_directories(out);
    const auto boxes = ct::ingest::load_box_file(samples / "boxes.json");
    const auto palette = ct::ingest::load_palette_file(samples / "palette.txt");
    const auto joined = ct::ingest::join_boxes_palette(boxes, palette);
    const auto ply = ct::io::canonical_descriptor(ct::io::FormatKind::ply, ct::io::Encoding::binary_little_endian);

    const ct::PointCloud scene = make_scene(7);
    ct::io::write_cloud(scene, out / "scene.ply", ply);

    // Drop the speckles in the tree first, then pull what is left inside the
    // sphere; finally shift the car to a blue of our choosing.
    const ct::OrientedBox& tree = boxes.boxes[0];
    const ct::OrientedBox& car = boxes.boxes[1];
    ct::recolor::SphereParams sphere;
    sphere.radius = ct::recolor::PercentileRadius{90.0};
    ct::recolor::RemapParams blue;
    blue.target = {{10, 20, 120}, {40, 60, 200}};
    const std::vector<ct::recolor::EditStep> steps{
        ct::recolor::DeleteSphericalStep{tree, sphere},
        ct::recolor::RecolorSphericalStep{tree, sphere},
        ct::recolor::RecolorRemapStep{car, blue},
    };
    const auto edited = ct::recolor::apply_pipeline(scene, steps);
    std::cout << ct::recolor::to_table(edited.report);
    ct::io::write_cloud(edited.cloud, out / "edited.ply", ply);

    const auto segmented = ct::recolor::recolor_substitute(scene, joined);
    ct::io::write_cloud(segmented, out / "segmented.ply", ply);
    std::cout << "segmented: " << segmented.size() << " of " << scene.size() << " points kept\n";

    const auto parts = ct::split::split_by_boxes(scene, boxes.boxes);
    const auto written = ct::split::write_fragments(parts, out / "fragments", ply);
    for (const auto& w : written) std::cout << "fragment " << w.label << ": " << w.count << " points\n";
  } catch (const ct::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
