// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "cloudtint/split/splitter.hpp"
#include "oracles.hpp"

using namespace cloudtint;
using namespace cloudtint::split;

namespace {

PointCloud counting_cloud() {
  PointCloud c(true);
  for (double x : {0.0, 0.1, 0.2}) c.push_back({x, 0, 0});  // A
  for (double x : {5.0, 5.1}) c.push_back({x, 0, 0});       // B
  c.push_back({20, 0, 0});                                  // outside
  return c;
}

const OrientedBox kA = make_box("A", {0, 0, 0}, {1, 1, 1});
const OrientedBox kB = make_box("B", {5, 0, 0}, {1, 1, 1});

}  // namespace

TEST(Split, CountsPerFragment) {
  const auto r = split_by_boxes(counting_cloud(), {kA, kB});
  ASSERT_EQ(r.fragments.size(), 2u);
  EXPECT_EQ(r.fragments[0].label, "A");
  EXPECT_EQ(r.fragments[0].cloud.size(), 3u);
  EXPECT_EQ(r.fragments[1].cloud.size(), 2u);
  ASSERT_TRUE(r.remainder);
  EXPECT_EQ(r.remainder->cloud.size(), 1u);
}

TEST(Split, OverlapFirstBoxWinsUnlessDuplicating) {
  PointCloud c(true);
  c.push_back({0.4, 0, 0});
  const auto b2 = make_box("B", {0.8, 0, 0}, {1, 1, 1});
  auto r = split_by_boxes(c, {kA, b2});
  EXPECT_EQ(r.fragments[0].cloud.size(), 1u);
  EXPECT_EQ(r.fragments[1].cloud.size(), 0u);
  r = split_by_boxes(c, {kA, b2}, {.duplicates = true});
  EXPECT_EQ(r.fragments[0].cloud.size() + r.fragments[1].cloud.size(), c.size() + 1);
}

TEST(Split, SharedLabelsMerge) {
  const auto a2 = make_box("A", {5, 0, 0}, {1, 1, 1});
  const auto r = split_by_boxes(counting_cloud(), {kA, a2});
  ASSERT_EQ(r.fragments.size(), 1u);
  EXPECT_EQ(r.fragments[0].cloud.size(), 5u);
  EXPECT_EQ(r.fragments[0].source_indices, (std::vector<std::size_t>{0, 1, 2, 3, 4}));
}

TEST(Split, NoBoxesAndNoRemainder) {
  try {
    split_by_boxes(counting_cloud(), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoBoxes);
  }
  EXPECT_FALSE(split_by_boxes(counting_cloud(), {kA}, {.emit_remainder = false}).remainder);
}

TEST(Split, PartitionAndMembershipProperties) {
  std::mt19937_64 rng(31);
  const auto cloud = oracle::random_cloud(rng, 3000);
  for (int t = 0; t < 30; ++t) {
    std::vector<OrientedBox> boxes;
    for (int k = 0; k < 1 + t % 5; ++k) boxes.push_back(oracle::random_box(rng, 10, "L" + std::to_string(k % 3)));
    const auto r = split_by_boxes(cloud, boxes);
    std::vector<int> seen(cloud.size(), 0);
    for (const auto& f : r.fragments) {
      ASSERT_TRUE(std::is_sorted(f.source_indices.begin(), f.source_indices.end()));
      for (std::size_t k = 0; k < f.source_indices.size(); ++k) {
        const std::size_t i = f.source_indices[k];
        ++seen[i];
        ASSERT_EQ(f.cloud.position(k), cloud.position(i));
        bool member = false;
        for (const auto& b : boxes) member |= b.label == f.label && point_in_box(cloud.position(i), b);
        ASSERT_TRUE(member);
      }
    }
    for (std::size_t i : r.remainder->source_indices) ++seen[i];
    for (int s : seen) ASSERT_EQ(s, 1);

    // Appending a box that holds no points only adds an empty fragment.
    auto more = boxes;
    more.push_back(make_box("empty", {1000, 0, 0}, {1, 1, 1}));
    const auto r2 = split_by_boxes(cloud, more);
    ASSERT_EQ(r2.fragments.size(), r.fragments.size() + 1);
    for (std::size_t k = 0; k < r.fragments.size(); ++k)
      ASSERT_EQ(r2.fragments[k].source_indices, r.fragments[k].source_indices);
    EXPECT_TRUE(r2.fragments.back().cloud.empty());
    EXPECT_EQ(r2.remainder->source_indices, r.remainder->source_indices);
  }
}

TEST(WriteFragments, FilesManifestAndEmptyWarning) {
  oracle::TempDir dir("split");
  const auto empty_box = make_box("C", {100, 0, 0}, {1, 1, 1});
  const auto r = split_by_boxes(counting_cloud(), {kA, kB, empty_box});
  io::Diagnostics diag;
  const auto written =
      write_fragments(r, dir.path(), io::canonical_descriptor(io::FormatKind::ply), "{label}.{ext}", {}, &diag);
  ASSERT_EQ(written.size(), 4u);
  EXPECT_TRUE(std::filesystem::exists(dir / "A.ply"));
  EXPECT_TRUE(std::filesystem::exists(dir / "B.ply"));
  EXPECT_TRUE(std::filesystem::exists(dir / "C.ply"));
  EXPECT_TRUE(std::filesystem::exists(dir / "remainder.ply"));
  EXPECT_EQ(io::read_cloud(dir / "C.ply").size(), 0u);
  EXPECT_EQ(io::read_cloud(dir / "A.ply").size(), 3u);
  ASSERT_EQ(diag.warnings.size(), 1u);
  EXPECT_NE(diag.warnings[0].find("'C'"), std::string::npos);

  std::ifstream mf(dir / "manifest.json");
  const auto manifest = nlohmann::json::parse(mf);
  ASSERT_EQ(manifest.size(), 4u);
  EXPECT_EQ(manifest[1]["label"], "B");
  EXPECT_EQ(manifest[1]["path"], "B.ply");
  EXPECT_EQ(manifest[1]["count"], 2);
}

TEST(WriteFragments, CollisionsAndUnsafeLabels) {
  oracle::TempDir dir("split");
  const auto r = split_by_boxes(counting_cloud(), {make_box("a/b", {0, 0, 0}, {1, 1, 1}),
                                                   make_box("a_b", {5, 0, 0}, {1, 1, 1}),
                                                   make_box("remainder", {20, 0, 0}, {1, 1, 1})});
  const auto written = write_fragments(r, dir.path(), io::canonical_descriptor(io::FormatKind::xyzrgb));
  ASSERT_EQ(written.size(), 4u);
  EXPECT_EQ(written[0].path.filename(), "a_b.xyzrgb");
  EXPECT_EQ(written[1].path.filename(), "a_b_2.xyzrgb");
  EXPECT_EQ(written[2].path.filename(), "remainder_2.xyzrgb");
  EXPECT_EQ(written[3].path.filename(), "remainder.xyzrgb");
  EXPECT_EQ(written[3].count, 0u);
}

TEST(WriteFragments, TemplateNeedsLabel) {
  oracle::TempDir dir("split");
  const auto r = split_by_boxes(counting_cloud(), {kA});
  EXPECT_THROW(write_fragments(r, dir.path(), io::canonical_descriptor(io::FormatKind::ply), "part.{ext}"), Error);
  const auto w = write_fragments(r, dir.path(), io::canonical_descriptor(io::FormatKind::ply), "part_{label}.{ext}");
  EXPECT_EQ(w[0].path.filename(), "part_A.ply");
}
