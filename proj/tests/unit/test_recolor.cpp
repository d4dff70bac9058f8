// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cloudtint/recolor/pipeline.hpp"
#include "oracles.hpp"
#include "scenes.hpp"

using namespace cloudtint;
using namespace cloudtint::recolor;

namespace {

SphereParams pct(double q, OutlierMode m = OutlierMode::project_to_surface) {
  SphereParams p;
  p.radius = PercentileRadius{q};
  p.outlier_mode = m;
  return p;
}

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::InvalidArgument;
}

std::vector<Rgb> in_box_colors(const PointCloud& c, const OrientedBox& b) {
  std::vector<Rgb> out;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (oracle::contains(b, c.position(i))) out.push_back(c.color(i));
  return out;
}

const OrientedBox kUnitBox = make_box("a", {0, 0, 0}, {2, 2, 2});

PointCloud line_cloud(const std::vector<Rgb>& colors) {
  PointCloud c(true);
  for (std::size_t i = 0; i < colors.size(); ++i) c.push_back({-0.9 + 0.01 * double(i), 0, 0}, colors[i]);
  return c;
}

}  // namespace

// ---- sphere fitting -------------------------------------------------------

TEST(FitSphere, IdenticalColorsGiveZeroRadius) {
  const std::vector<Rgb> cs(10, Rgb{7, 8, 9});
  const auto s = fit_color_sphere(cs, pct(90));
  EXPECT_EQ(s.center, (RgbReal{7, 8, 9}));
  EXPECT_EQ(s.radius, 0.0);
}

TEST(FitSphere, TwoColorsAnyPercentile) {
  const std::vector<Rgb> cs{{0, 0, 0}, {100, 0, 0}};
  for (double q : {100.0, 50.0, 1.0}) {
    const auto s = fit_color_sphere(cs, pct(q));
    EXPECT_EQ(s.center, (RgbReal{50, 0, 0}));
    EXPECT_DOUBLE_EQ(s.radius, 50.0) << q;
  }
}

TEST(FitSphere, AbsoluteRadius) {
  SphereParams p;
  p.radius = AbsoluteRadius{12.5};
  EXPECT_EQ(fit_color_sphere(std::vector<Rgb>{{1, 1, 1}}, p).radius, 12.5);
}

TEST(FitSphere, InvalidParams) {
  EXPECT_EQ(code_of([] { fit_color_sphere(std::vector<Rgb>{{1, 1, 1}}, pct(0)); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { fit_color_sphere(std::vector<Rgb>{{1, 1, 1}}, pct(100.5)); }), ErrorCode::InvalidArgument);
  SphereParams p;
  p.radius = AbsoluteRadius{-1};
  EXPECT_EQ(code_of([&] { fit_color_sphere(std::vector<Rgb>{{1, 1, 1}}, p); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { fit_color_sphere(std::vector<Rgb>{}, pct(50)); }), ErrorCode::EmptySelection);
}

TEST(Percentile, NearestRankMatchesSortOracle) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> v(0, 400);
  for (std::size_t n : {1u, 2u, 3u, 7u, 10u, 100u, 1001u}) {
    std::vector<double> xs(n);
    for (auto& x : xs) x = v(rng);
    for (double q : {0.1, 1.0, 10.0, 25.0, 50.0, 90.0, 95.0, 99.9, 100.0}) {
      auto copy = xs;
      EXPECT_EQ(nearest_rank_percentile(copy, q), oracle::percentile(xs, q)) << n << " " << q;
    }
  }
  std::vector<double> ten{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  EXPECT_EQ(nearest_rank_percentile(ten, 90), 9);
  EXPECT_EQ(nearest_rank_percentile(ten, 91), 10);
}

// ---- projection and spherical recolor -------------------------------------

TEST(Project, OutlierAtTwiceRadiusLandsOnSurface) {
  const ColorSphere s{{100, 100, 100}, 20};
  EXPECT_EQ(project_to_sphere({140, 100, 100}, s), (Rgb{120, 100, 100}));
  EXPECT_EQ(project_to_sphere({100, 60, 100}, s), (Rgb{100, 80, 100}));
}

TEST(Project, ZeroRadiusMapsToCenter) {
  const ColorSphere s{{10.4, 20.6, 30.5}, 0};
  EXPECT_EQ(project_to_sphere({200, 0, 0}, s), (Rgb{10, 21, 30}));
}

TEST(RecolorSpherical, InliersUntouchedOutlierProjected) {
  // Center (50,0,0); distances 50, 50, 50 and one far point.
  auto c = line_cloud({{0, 0, 0}, {100, 0, 0}, {50, 50, 0}, {50, 0, 50}, {50, 0, 0}});
  SphereParams p;
  p.radius = AbsoluteRadius{25};
  const auto before = c;
  const auto rep = apply_recolor_spherical(c, kUnitBox, p);
  ASSERT_TRUE(rep.sphere);
  const auto center = rep.sphere->center;
  EXPECT_EQ(center, (RgbReal{50, 10, 10}));
  EXPECT_EQ(rep.examined, 5u);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double d0 = color_distance(before.color(i), center);
    if (d0 <= 25) {
      EXPECT_EQ(c.color(i), before.color(i));
    } else {
      EXPECT_LE(color_distance(c.color(i), center), 25 + std::sqrt(3.0) / 2);
    }
  }
}

TEST(RecolorSpherical, SyntheticTreeStaysWithinRadius) {
  auto scene = scenes::make_tree_scene(42, 5000, 500, 2000);
  const auto before = scene.cloud;
  const auto rep = apply_recolor_spherical(scene.cloud, scene.box, pct(90));
  const auto& s = *rep.sphere;

  // Oracle statistics from a plain scan.
  const auto colors0 = in_box_colors(before, scene.box);
  ASSERT_EQ(colors0.size(), 5500u);
  const auto mean = oracle::mean(colors0);
  std::vector<double> d;
  for (const auto& c : colors0) d.push_back(color_distance(c, mean));
  EXPECT_NEAR(s.center.r, mean.r, 1e-9);
  EXPECT_EQ(s.radius, oracle::percentile(d, 90));
  std::size_t expect_recolored = 0;
  for (double x : d) expect_recolored += x > s.radius;
  EXPECT_EQ(rep.recolored, expect_recolored);

  ASSERT_EQ(scene.cloud.size(), before.size());
  for (std::size_t i = 0; i < before.size(); ++i) {
    ASSERT_EQ(scene.cloud.position(i), before.position(i));
    if (!scene.in_box[i]) {
      ASSERT_EQ(scene.cloud.color(i), before.color(i));
      continue;
    }
    ASSERT_LE(color_distance(scene.cloud.color(i), s.center), s.radius + 0.87);
    if (color_distance(before.color(i), s.center) <= s.radius) {
      ASSERT_EQ(scene.cloud.color(i), before.color(i));
    }
  }
}

TEST(RecolorSpherical, NearestInlierMatchesBruteForce) {
  auto scene = scenes::make_tree_scene(43, 3000, 300, 500);
  const auto before = scene.cloud;
  const auto rep = apply_recolor_spherical(scene.cloud, scene.box, pct(90, OutlierMode::nearest_inlier_spatial));
  const auto& s = *rep.sphere;
  std::vector<std::size_t> inliers;
  for (std::size_t i = 0; i < before.size(); ++i)
    if (scene.in_box[i] && color_distance(before.color(i), s.center) <= s.radius) inliers.push_back(i);
  for (std::size_t i = 0; i < before.size(); ++i) {
    if (!scene.in_box[i] || color_distance(before.color(i), s.center) <= s.radius) {
      ASSERT_EQ(scene.cloud.color(i), before.color(i));
      continue;
    }
    double best = 1e300;
    std::size_t arg = 0;
    for (std::size_t j : inliers) {
      const Vec3 dp = before.position(j) - before.position(i);
      const double d2 = dp.x * dp.x + dp.y * dp.y + dp.z * dp.z;
      if (d2 < best) best = d2, arg = j;
    }
    ASSERT_EQ(scene.cloud.color(i), before.color(arg)) << i;
  }
}

TEST(RecolorSpherical, NearestInlierTieBreaksOnLowestIndex) {
  PointCloud c(true);
  c.push_back({0.5, 0, 0}, {10, 10, 10});    // 0 inlier
  c.push_back({-0.5, 0, 0}, {12, 12, 12});   // 1 inlier, same distance to point 2
  c.push_back({0, 0, 0}, {250, 250, 250});   // 2 outlier
  SphereParams p;
  p.radius = AbsoluteRadius{150};  // center ~(90.7, 90.7, 90.7): inliers at ~137 and ~140, outlier at ~276
  p.outlier_mode = OutlierMode::nearest_inlier_spatial;
  apply_recolor_spherical(c, kUnitBox, p);
  EXPECT_EQ(c.color(2), (Rgb{10, 10, 10}));
}

TEST(RecolorSpherical, NoInliersFallsBackToProjection) {
  auto c = line_cloud({{0, 0, 0}, {100, 0, 0}});
  SphereParams p;
  p.radius = AbsoluteRadius{10};
  p.outlier_mode = OutlierMode::nearest_inlier_spatial;
  const auto rep = apply_recolor_spherical(c, kUnitBox, p);
  EXPECT_EQ(rep.warnings.size(), 1u);
  EXPECT_EQ(c.color(0), (Rgb{40, 0, 0}));
  EXPECT_EQ(c.color(1), (Rgb{60, 0, 0}));
}

TEST(RecolorSpherical, EmptyBoxIsEmptySelection) {
  auto c = line_cloud({{0, 0, 0}});
  EXPECT_EQ(code_of([&] { apply_recolor_spherical(c, make_box("far", {100, 0, 0}, {1, 1, 1}), pct(90)); }),
            ErrorCode::EmptySelection);
}

TEST(RecolorSpherical, ThreadCapDoesNotChangeOutput) {
  auto scene = scenes::make_tree_scene(44, 150000, 5000, 1000);
  set_thread_cap(1);
  const auto a = recolor_spherical(scene.cloud, scene.box, pct(80, OutlierMode::nearest_inlier_spatial));
  set_thread_cap(3);
  const auto b = recolor_spherical(scene.cloud, scene.box, pct(80, OutlierMode::nearest_inlier_spatial));
  set_thread_cap(0);
  EXPECT_EQ(a, b);
}

// ---- KD tree --------------------------------------------------------------

TEST(KdTree, MatchesBruteForceIncludingDuplicates) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> grid(0, 9);
  std::vector<Vec3> pts(3000);
  for (auto& p : pts) p = {double(grid(rng)), double(grid(rng)), double(grid(rng))};  // many exact ties
  std::vector<std::size_t> subset;
  for (std::size_t i = 0; i < pts.size(); i += 2) subset.push_back(i);
  const KdTree3 tree(pts, subset);
  std::uniform_real_distribution<double> q(-1, 10);
  for (int t = 0; t < 2000; ++t) {
    const Vec3 p = t % 2 ? Vec3{q(rng), q(rng), q(rng)} : Vec3{double(grid(rng)), double(grid(rng)) + 0.5, 0.5};
    double best = 1e300;
    std::size_t arg = 0;
    for (std::size_t j : subset) {
      const Vec3 d = pts[j] - p;
      const double d2 = d.x * d.x + d.y * d.y + d.z * d.z;
      if (d2 < best) best = d2, arg = j;
    }
    ASSERT_EQ(tree.nearest(p), arg);
  }
}

// ---- spherical deletion ---------------------------------------------------

TEST(DeleteSpherical, IdenticalColorsNothingDeleted) {
  auto c = line_cloud(std::vector<Rgb>(20, Rgb{3, 4, 5}));
  EXPECT_EQ(apply_delete_spherical_outliers(c, kUnitBox, pct(100)).deleted, 0u);
  EXPECT_EQ(c.size(), 20u);
}

TEST(DeleteSpherical, RemovesExactlyTheInjectedOutliers) {
  auto scene = scenes::make_tree_scene(45, 5000, 500, 1000);
  const auto before = scene.cloud;
  // Ranking exactly the inlier share puts the radius at the farthest inlier.
  const double q = 100.0 * 5000.0 / 5500.0;
  const auto rep = apply_delete_spherical_outliers(scene.cloud, scene.box, pct(q));
  EXPECT_EQ(rep.deleted, 500u);
  std::size_t j = 0;
  for (std::size_t i = 0; i < before.size(); ++i) {
    if (scene.injected[i]) continue;
    ASSERT_LT(j, scene.cloud.size());
    ASSERT_EQ(scene.cloud.position(j), before.position(i));
    ASSERT_EQ(scene.cloud.color(j), before.color(i));
    ++j;
  }
  EXPECT_EQ(j, scene.cloud.size());
}

TEST(DeleteSpherical, DefaultPercentileDeletesExactlyTheOracleSet) {
  auto scene = scenes::make_tree_scene(46, 5000, 500, 1000);
  const auto before = scene.cloud;
  const auto rep = apply_delete_spherical_outliers(scene.cloud, scene.box, pct(90));
  const auto& s = *rep.sphere;
  std::size_t expect = 0, injected_gone = 0;
  for (std::size_t i = 0; i < before.size(); ++i)
    if (scene.in_box[i] && color_distance(before.color(i), s.center) > s.radius) {
      ++expect;
      injected_gone += scene.injected[i];
    }
  EXPECT_EQ(rep.deleted, expect);
  EXPECT_EQ(injected_gone, 500u);
  for (std::size_t i = 0; i < scene.cloud.size(); ++i)
    if (oracle::contains(scene.box, scene.cloud.position(i))) {
      ASSERT_LE(color_distance(scene.cloud.color(i), s.center), s.radius);
    }
}

TEST(DeleteSpherical, WildColorOutsideBoxSurvives) {
  auto c = line_cloud({{10, 10, 10}, {12, 12, 12}});
  c.push_back({50, 50, 50}, {255, 0, 255});
  SphereParams p;
  p.radius = AbsoluteRadius{0};
  apply_delete_spherical_outliers(c, kUnitBox, p);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.color(0), (Rgb{255, 0, 255}));
}

// ---- RGB box remap --------------------------------------------------------

TEST(Remap, WorkedExample) {
  auto c = line_cloud({{0, 0, 0}, {100, 100, 100}, {100, 0, 0}});
  RemapParams p;
  p.target = {{175, 0, 0}, {225, 100, 100}};
  const auto rep = apply_recolor_rgb_box_remap(c, kUnitBox, p);
  EXPECT_EQ(c.color(2), (Rgb{225, 0, 0}));
  EXPECT_EQ(c.color(0), (Rgb{175, 0, 0}));
  EXPECT_EQ(rep.source_aabb->centroid(), (RgbReal{50, 50, 50}));
}

TEST(Remap, TargetEqualToSourceIsIdentity) {
  std::mt19937_64 rng(13);
  auto c = oracle::random_cloud(rng, 5000, 1.8);
  const auto before = c;
  RemapParams p;
  p.target = rgb_color_aabb(before.colors()).box;
  apply_recolor_rgb_box_remap(c, kUnitBox, p);
  EXPECT_EQ(c, before);
}

TEST(Remap, ZeroExtentSourceMapsToTargetCentroid) {
  auto c = line_cloud({{9, 9, 9}, {9, 9, 9}});
  RemapParams p;
  p.target = {{10, 20, 30}, {20, 41, 30}};
  apply_recolor_rgb_box_remap(c, kUnitBox, p);
  EXPECT_EQ(c.color(0), (Rgb{15, 30, 30}));  // 30.5 rounds to even
  EXPECT_EQ(c.color(1), c.color(0));
}

TEST(Remap, MatchesScalarOracleAndPreservesOrder) {
  std::mt19937_64 rng(14);
  auto c = oracle::random_cloud(rng, 20000, 1.8);
  const auto before = c;
  RemapParams p;
  p.target = {{10, 30, 100}, {60, 90, 220}};
  apply_recolor_rgb_box_remap(c, kUnitBox, p);
  const auto src = rgb_color_aabb(before.colors()).box;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (int k = 0; k < 3; ++k) {
      const double want = oracle::remap_channel(before.color(i)[k], src.min[k], src.max[k], p.target.min[k], p.target.max[k]);
      ASSERT_LE(std::abs(c.color(i)[k] - want), 0.5 + 1e-9);
    }
  std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
  for (int t = 0; t < 5000; ++t) {
    const std::size_t a = pick(rng), b = pick(rng);
    for (int k = 0; k < 3; ++k)
      if (before.color(a)[k] < before.color(b)[k]) {
        ASSERT_LE(c.color(a)[k], c.color(b)[k]);
      }
  }
}

TEST(Remap, InvalidTargetRejected) {
  auto c = line_cloud({{1, 1, 1}});
  RemapParams p;
  p.target = {{10, 0, 0}, {5, 0, 0}};
  EXPECT_EQ(code_of([&] { apply_recolor_rgb_box_remap(c, kUnitBox, p); }), ErrorCode::InvalidArgument);
  p.target = {{0, 0, 0}, {256, 0, 0}};
  EXPECT_EQ(code_of([&] { apply_recolor_rgb_box_remap(c, kUnitBox, p); }), ErrorCode::InvalidArgument);
}

// ---- RGB box deletion -----------------------------------------------------

TEST(DeleteRgbBox, FullDomainKeepsEverything) {
  std::mt19937_64 rng(15);
  auto c = oracle::random_cloud(rng, 1000, 1.8);
  RemapParams p;
  p.target = {{0, 0, 0}, {255, 255, 255}};
  EXPECT_EQ(apply_delete_rgb_box_outliers(c, kUnitBox, p).deleted, 0u);
}

TEST(DeleteRgbBox, DegenerateTargetBoundary) {
  auto c = line_cloud({{0, 255, 0}, {1, 255, 0}});
  RemapParams p;
  p.target = {{0, 255, 0}, {0, 255, 0}};
  apply_delete_rgb_box_outliers(c, kUnitBox, p);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.color(0), (Rgb{0, 255, 0}));
}

TEST(DeleteRgbBox, MatchesIntervalFilter) {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> v(0, 255);
  for (int t = 0; t < 20; ++t) {
    auto c = oracle::random_cloud(rng, 3000, 4.0);
    const auto before = c;
    RemapParams p;
    for (int k = 0; k < 3; ++k) {
      double a = v(rng), b = v(rng);
      p.target.min[k] = std::min(a, b);
      p.target.max[k] = std::max(a, b);
    }
    apply_delete_rgb_box_outliers(c, kUnitBox, p);
    PointCloud expect(true);
    for (std::size_t i = 0; i < before.size(); ++i) {
      bool keep = true;
      if (oracle::contains(kUnitBox, before.position(i)))
        for (int k = 0; k < 3; ++k)
          keep = keep && before.color(i)[k] >= p.target.min[k] && before.color(i)[k] <= p.target.max[k];
      if (keep) expect.push_back(before.position(i), before.color(i));
    }
    ASSERT_EQ(c, expect);
  }
}

// ---- substitution ---------------------------------------------------------

TEST(Substitute, DocumentedCases) {
  PointCloud c(true);
  c.push_back({0, 0, 0}, {1, 1, 1});    // in tree
  c.push_back({10, 0, 0}, {2, 2, 2});   // outside all
  c.push_back({0, 5, 0}, {3, 3, 3});    // only in disabled sky
  c.push_back({0, 0.9, 0}, {4, 4, 4});  // in tree and sky
  const std::vector<ingest::JoinedBox> joined{
      {make_box("tree", {0, 0, 0}, {2, 2, 2}), Rgb{0, 255, 0}, true},
      {make_box("sky", {0, 4, 0}, {2, 8, 2}), Rgb{135, 206, 235}, false},
  };
  const auto rep = apply_recolor_substitute(c, joined);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(rep.deleted, 2u);
  EXPECT_EQ(c.color(0), (Rgb{0, 255, 0}));
  EXPECT_EQ(c.position(1), (Vec3{0, 0.9, 0}));
}

TEST(Substitute, FirstBoxWinsAndIsIdempotent) {
  std::mt19937_64 rng(17);
  const auto cloud = oracle::random_cloud(rng, 20000);
  const std::vector<ingest::JoinedBox> joined{
      {make_box("a", {0, 0, 0}, {4, 4, 4}, {0, 0, 20}), Rgb{255, 0, 0}, true},
      {make_box("b", {1, 1, 1}, {4, 4, 4}, {10, 0, 0}), Rgb{0, 255, 0}, true},
      {make_box("c", {-1, 0, 0}, {3, 3, 3}), std::nullopt, true},
  };
  const auto out = recolor_substitute(cloud, joined);
  std::size_t j = 0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    std::optional<Rgb> want;
    for (const auto& b : joined)
      if (b.enabled && b.color && oracle::contains(b.box, cloud.position(i))) {
        want = b.color;
        break;
      }
    if (!want) continue;
    ASSERT_EQ(out.position(j), cloud.position(i));
    ASSERT_EQ(out.color(j), *want);
    ++j;
  }
  EXPECT_EQ(j, out.size());
  EXPECT_EQ(recolor_substitute(out, joined), out);
}

TEST(Substitute, NoEnabledColoredBox) {
  PointCloud c(true);
  c.push_back({0, 0, 0});
  const std::vector<ingest::JoinedBox> joined{{kUnitBox, Rgb{1, 1, 1}, false}, {kUnitBox, std::nullopt, true}};
  EXPECT_EQ(code_of([&] { apply_recolor_substitute(c, joined); }), ErrorCode::NoEnabledBoxes);
}

TEST(Substitute, ColorlessInputGainsColor) {
  PointCloud c(false);
  c.push_back({0, 0, 0});
  const auto out = recolor_substitute(c, {{kUnitBox, Rgb{9, 9, 9}, true}});
  EXPECT_TRUE(out.has_color());
}

// ---- pipeline -------------------------------------------------------------

TEST(Pipeline, EmptyIsIdentity) {
  std::mt19937_64 rng(18);
  const auto c = oracle::random_cloud(rng, 100);
  const auto r = apply_pipeline(c, {});
  EXPECT_EQ(r.cloud, c);
  EXPECT_EQ(r.report.points_in, 100u);
  EXPECT_EQ(r.report.points_out, 100u);
}

TEST(Pipeline, DeleteThenRecolorMatchesSequentialSingleSteps) {
  const auto scene = scenes::make_tree_scene(47, 5000, 500, 1000);
  const auto r = apply_pipeline(scene.cloud, {DeleteSphericalStep{scene.box, pct(90)},
                                              RecolorSphericalStep{scene.box, pct(90)}});
  auto manual = scene.cloud;
  const auto d = apply_delete_spherical_outliers(manual, scene.box, pct(90));
  const auto rc = apply_recolor_spherical(manual, scene.box, pct(90));
  EXPECT_EQ(r.cloud, manual);
  ASSERT_EQ(r.report.steps.size(), 2u);
  EXPECT_EQ(r.report.steps[0].deleted, d.deleted);
  EXPECT_EQ(r.report.steps[1].recolored, rc.recolored);
  EXPECT_EQ(r.report.points_out, scene.cloud.size() - d.deleted);
}

TEST(Pipeline, EmptyBoxAbortsWithStepIndex) {
  const auto scene = scenes::make_tree_scene(48, 100, 10, 10);
  try {
    apply_pipeline(scene.cloud, {RecolorSphericalStep{scene.box, pct(90)},
                                 RecolorSphericalStep{make_box("none", {1000, 0, 0}, {1, 1, 1}), pct(90)}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptySelection);
    EXPECT_EQ(e.where().item.value_or(99), 1u);
  }
}

TEST(Pipeline, NonDeletingStepsKeepPositionsAndOrder) {
  std::mt19937_64 rng(19);
  const auto c = oracle::random_cloud(rng, 5000, 3.0, true);
  RemapParams rp;
  rp.target = {{0, 0, 128}, {64, 64, 255}};
  const auto r = apply_pipeline(c, {RecolorSphericalStep{kUnitBox, pct(50)}, RecolorRemapStep{kUnitBox, rp}});
  ASSERT_EQ(r.cloud.size(), c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    ASSERT_EQ(r.cloud.position(i), c.position(i));
    ASSERT_EQ(r.cloud.normals()[i], c.normals()[i]);
    if (!oracle::contains(kUnitBox, c.position(i))) {
      ASSERT_EQ(r.cloud.color(i), c.color(i));
    }
  }
}

TEST(Report, JsonAndTable) {
  const auto scene = scenes::make_tree_scene(49, 100, 10, 10);
  const auto r = apply_pipeline(scene.cloud, {DeleteSphericalStep{scene.box, pct(90)}});
  const auto j = to_json(r.report);
  EXPECT_EQ(j["steps"][0]["op"], "delete_spherical");
  EXPECT_EQ(j["steps"][0]["box"], "tree");
  EXPECT_TRUE(j["steps"][0].contains("sphere"));
  EXPECT_NE(to_table(r.report).find("delete_spherical"), std::string::npos);
}
