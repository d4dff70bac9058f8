// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cloudtint/cli/app.hpp"
#include "oracles.hpp"
#include "scenes.hpp"

using namespace cloudtint;

namespace {

const std::filesystem::path kSamples = CLOUDTINT_SAMPLES;

struct Run {
  int code;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "cloudtint");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

void spit(const std::filesystem::path& p, const std::string& s) {
  std::ofstream f(p, std::ios::binary);
  f << s;
}

std::string box_json(const OrientedBox& b) {
  ingest::BoxFile f;
  f.boxes = {b};
  return ingest::serialize_box_file(f);
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    scene_ = scenes::make_tree_scene(77, 5000, 500, 1000);
    io::write_cloud(scene_.cloud, dir_ / "c.ply", io::canonical_descriptor(io::FormatKind::ply));
    spit(dir_ / "b.json", box_json(scene_.box));
  }
  std::string p(const std::string& name) const { return (dir_ / name).string(); }

  oracle::TempDir dir_{"cli"};
  scenes::TreeScene scene_;
};

}  // namespace

TEST_F(CliTest, ConvertPrintsReport) {
  const auto r = invoke({"convert", p("c.ply"), p("out.las")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("ply -> las"), std::string::npos);
  EXPECT_EQ(io::read_cloud(p("out.las")).size(), scene_.cloud.size());
}

TEST_F(CliTest, SegmentWithoutPaletteIsUsageError) {
  const auto r = invoke({"segment", "--cloud", p("c.ply"), "--boxes", p("b.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE((r.out + r.err).find("--palette"), std::string::npos);
}

TEST_F(CliTest, RecolorCountMatchesLibraryOracle) {
  const auto r = invoke({"recolor", "--cloud", p("c.ply"), "--boxes", p("b.json"), "--mode", "spherical",
                      "--percentile", "90", "--out", p("out.ply"), "--report", p("rep.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto expected = scene_.cloud;
  recolor::SphereParams sp;
  const auto step = recolor::apply_recolor_spherical(expected, scene_.box, sp);
  const auto rep = nlohmann::json::parse(slurp(p("rep.json")));
  EXPECT_EQ(rep["edit"]["steps"][0]["recolored"], step.recolored);
  EXPECT_EQ(rep["parameters"]["percentile"], 90.0);
  EXPECT_EQ(io::read_cloud(p("out.ply")), expected);
}

TEST_F(CliTest, DryRunWritesNothing) {
  const auto r = invoke({"delete", "--cloud", p("c.ply"), "--boxes", p("b.json"), "--dry-run", "--out", p("x.ply")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_FALSE(std::filesystem::exists(p("x.ply")));
  EXPECT_NE(r.out.find("delete_spherical"), std::string::npos);
}

TEST_F(CliTest, RgbBoxModeNeedsTargets) {
  auto r = invoke({"recolor", "--cloud", p("c.ply"), "--boxes", p("b.json"), "--mode", "rgb-box", "--out", p("o.ply")});
  EXPECT_EQ(r.code, 1);
  r = invoke({"recolor", "--cloud", p("c.ply"), "--boxes", p("b.json"), "--mode", "rgb-box", "--target-min", "0,0,100",
           "--target-max", "40,60,300", "--out", p("o.ply")});
  EXPECT_EQ(r.code, 1);
  r = invoke({"recolor", "--cloud", p("c.ply"), "--boxes", p("b.json"), "--mode", "rgb-box", "--target-min", "0,0,100",
           "--target-max", "40,60,200", "--out", p("o.ply"), "--json"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["edit"]["steps"][0]["op"], "recolor_rgb_box");
  EXPECT_EQ(j["parameters"]["target_max"][2], 200.0);
}

TEST_F(CliTest, ExitCodesForDataAndIoErrors) {
  spit(dir_ / "bad.json", "{ not json");
  EXPECT_EQ(invoke({"recolor", "--cloud", p("c.ply"), "--boxes", p("bad.json"), "--out", p("o.ply")}).code, 2);
  EXPECT_EQ(invoke({"convert", p("missing.ply"), p("o.las")}).code, 3);
  spit(dir_ / "bad.ply", "not ply\n");
  EXPECT_EQ(invoke({"info", p("bad.ply")}).code, 2);
  EXPECT_EQ(invoke({"convert", p("c.ply"), p("o.laz")}).code, 2);
  EXPECT_EQ(invoke({"convert", p("c.ply"), p("o.unknown")}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 1);
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST_F(CliTest, DiagnosticsNameTheFileAndLine) {
  spit(dir_ / "pal.txt", "tree 0 255 0 1\ntree 1 1 1 1\n");
  const auto r = invoke({"segment", "--cloud", p("c.ply"), "--boxes", p("b.json"), "--palette", p("pal.txt"), "--out",
                      p("s.ply")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("pal.txt"), std::string::npos);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
  EXPECT_NE(r.err.find("DuplicateLabel"), std::string::npos);
}

TEST_F(CliTest, ColorlessInputIsDataError) {
  io::write_cloud(scene_.cloud, dir_ / "c.xyz", io::canonical_descriptor(io::FormatKind::xyz));
  const auto r = invoke({"recolor", "--cloud", p("c.xyz"), "--boxes", p("b.json"), "--out", p("o.ply")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("MissingColor"), std::string::npos);
}

TEST_F(CliTest, DisabledPaletteEntriesSkipBoxes) {
  spit(dir_ / "pal.txt", "tree 0 255 0 0\n");
  const auto r = invoke({"recolor", "--cloud", p("c.ply"), "--boxes", p("b.json"), "--palette", p("pal.txt"), "--out",
                      p("o.ply")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("NoEnabledBoxes"), std::string::npos);
}

TEST_F(CliTest, SegmentAndSplit) {
  spit(dir_ / "pal.txt", "tree 0 255 0 1\n");
  auto r = invoke({"segment", "--cloud", p("c.ply"), "--boxes", p("b.json"), "--palette", p("pal.txt"), "--out",
                p("s.pcd")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto seg = io::read_cloud(p("s.pcd"));
  EXPECT_EQ(seg.size(), 5500u);
  for (const auto& c : seg.colors()) ASSERT_EQ(c, (Rgb{0, 255, 0}));

  r = invoke({"split", "--cloud", p("c.ply"), "--boxes", p("b.json"), "--out-dir", p("parts"), "--format", "pts"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(io::read_cloud(dir_ / "parts" / "tree.pts").size(), 5500u);
  EXPECT_EQ(io::read_cloud(dir_ / "parts" / "remainder.pts").size(), 1000u);
  EXPECT_TRUE(std::filesystem::exists(dir_ / "parts" / "manifest.json"));
}

TEST_F(CliTest, InfoAndGlobalFlagsAfterSubcommand) {
  const auto r = invoke({"info", p("c.ply"), "--json", "--threads", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["points"], scene_.cloud.size());
  EXPECT_EQ(j["input"]["descriptor"]["format"], "ply");
}

TEST_F(CliTest, ReportDescribesWrittenAttributes) {
  const auto r = invoke({"recolor", "--cloud", p("c.ply"), "--boxes", p("b.json"), "--out", p("o.las"), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["output"]["descriptor"]["format"], "las");
  EXPECT_EQ(j["output"]["descriptor"]["color"], true);
  EXPECT_EQ(j["output"]["descriptor"]["normals"], false);
}

TEST_F(CliTest, RepeatedRunsAreByteIdentical) {
  const std::vector<std::string> base{"recolor", "--cloud", p("c.ply"), "--boxes", p("b.json"), "--outlier-mode",
                                      "nearest"};
  auto a = base, b = base;
  a.insert(a.end(), {"--out", p("r1.las"), "--report", p("r1.json")});
  b.insert(b.end(), {"--out", p("r2.las"), "--report", p("r2.json")});
  const auto ra = invoke(a), rb = invoke(b);
  ASSERT_EQ(ra.code, 0) << ra.err;
  ASSERT_EQ(rb.code, 0) << rb.err;
  EXPECT_EQ(slurp(p("r1.las")), slurp(p("r2.las")));
  auto ja = nlohmann::json::parse(slurp(p("r1.json"))), jb = nlohmann::json::parse(slurp(p("r2.json")));
  ja["output"].erase("path");
  jb["output"].erase("path");
  EXPECT_EQ(ja, jb);
}

TEST(CliSamples, SampleFilesDriveSegment) {
  oracle::TempDir dir("samples");
  std::mt19937_64 rng(3);
  io::write_cloud(oracle::random_cloud(rng, 5000, 20.0), dir / "s.ply", io::canonical_descriptor(io::FormatKind::ply));
  const auto r = invoke({"segment", "--cloud", (dir / "s.ply").string(), "--boxes", (kSamples / "boxes.json").string(),
                      "--palette", (kSamples / "palette.txt").string(), "--dry-run"});
  EXPECT_EQ(r.code, 0) << r.err;
}
