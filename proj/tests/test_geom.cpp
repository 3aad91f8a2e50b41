#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <random>

#include "lipcap/raster.hpp"

using namespace lipcap;

namespace {

Scene unit_root_scene() {
  Scene scene;
  scene.root = DyadicSquare{0, 0, 0};
  return scene;
}

Scene full_root_scene() {
  Scene scene = unit_root_scene();
  scene.shapes.push_back(BitmapShape{0, {{0, 0}}});
  return scene;
}

// Integer-arithmetic annulus membership for leaves of a raster rooted at the
// unit square with the annulus centered at the origin: exact, no doubles.
bool integer_annulus_hit(std::uint64_t code, int depth, int index) {
  std::uint32_t ix, iy;
  morton_decode(code, ix, iy);
  // distances in leaf units
  std::int64_t xmin = ix, xmax = ix + 1;
  std::int64_t ymin = iy, ymax = iy + 1;
  std::int64_t min_sq = xmin * xmin + ymin * ymin;
  std::int64_t max_sq = xmax * xmax + ymax * ymax;
  std::int64_t router = std::int64_t{1} << (depth - index);
  std::int64_t rinner = std::int64_t{1} << (depth - index - 1);
  return min_sq <= router * router && max_sq >= rinner * rinner;
}

}  // namespace

TEST_CASE("empty scene rasterizes to an empty set") {
  RasterSet set = rasterize(unit_root_scene(), 4);
  CHECK(set.occupied_count() == 0);
  CHECK(set.empty());
}

TEST_CASE("bottom-edge segment occupies exactly the bottom row") {
  Scene scene = unit_root_scene();
  scene.shapes.push_back(Segment{{0, 0}, {1, 0}});
  RasterSet set = rasterize(scene, 3);
  REQUIRE(set.occupied_count() == 8);
  for (auto code : set.leaves) {
    std::uint32_t ix, iy;
    morton_decode(code, ix, iy);
    CHECK(iy == 0);
  }
}

TEST_CASE("disc through the center touches all four quadrants") {
  Scene scene = unit_root_scene();
  scene.shapes.push_back(Disc{{0.5, 0.5}, 0.5});
  RasterSet set = rasterize(scene, 1);
  CHECK(set.occupied_count() == 4);
}

TEST_CASE("annulus clip of the full root matches the integer oracle") {
  const int depth = 5;
  RasterSet full = rasterize(full_root_scene(), depth);
  Annulus ann{{0, 0}, 1};
  RasterSet clip = annulus_clip(full, ann);
  REQUIRE(!clip.empty());
  std::size_t expected = 0;
  for (auto code : full.leaves) {
    bool hit = integer_annulus_hit(code, depth, 1);
    if (hit) ++expected;
    bool in_clip = std::binary_search(clip.leaves.begin(), clip.leaves.end(), code);
    CHECK(in_clip == hit);
  }
  CHECK(clip.occupied_count() == expected);
}

TEST_CASE("annulus clip of an empty or disjoint set is empty") {
  RasterSet empty = rasterize(unit_root_scene(), 4);
  CHECK(annulus_clip(empty, Annulus{{0, 0}, 2}).empty());

  Scene corner = unit_root_scene();
  corner.shapes.push_back(Disc{{0.9, 0.9}, 0.05});
  RasterSet set = rasterize(corner, 6);
  REQUIRE(!set.empty());
  CHECK(annulus_clip(set, Annulus{{0, 0}, 4}).empty());
}

TEST_CASE("clip is leafwise contained in its input") {
  Scene scene = unit_root_scene();
  scene.shapes.push_back(Segment{{0.1, 0.2}, {0.8, 0.7}});
  RasterSet set = rasterize(scene, 6);
  RasterSet clip = annulus_clip(set, Annulus{{0.4, 0.4}, 2});
  CHECK(clip.leafwise_subset_of(set));
}

TEST_CASE("parametric slit complement matches direct segment enumeration") {
  ParametricDomain slit = ParametricDomain::make(DomainKind::Slit, 0.5, 0.5, 0.25, 0.25);
  const int depth = 8;
  ComplementRaster complement =
      complement_in_ball(slit, kParametricAnchor, slit.enclosing_radius, depth);
  // r_n = 4^{-n-1}: representable down to n = 3 at leaf size 2^-8.
  CHECK(complement.truncation_index == 3);

  Scene expected;
  expected.root = DyadicSquare{0, 0, 0};
  for (int n = 1; n <= 3; ++n) {
    double a = 0.5 * std::pow(0.5, n);
    double r = 0.25 * std::pow(0.25, n);
    expected.shapes.push_back(Segment{{0.5 + a - r, 0.5}, {0.5 + a + r, 0.5}});
  }
  RasterSet reference = rasterize(expected, depth);
  CHECK(complement.raster.leaves == reference.leaves);
}

TEST_CASE("parametric road-runner complement matches direct disc enumeration") {
  ParametricDomain runner =
      ParametricDomain::make(DomainKind::RoadRunner, 0.5, 0.5, 0.25, 0.25);
  const int depth = 8;
  ComplementRaster complement =
      complement_in_ball(runner, kParametricAnchor, runner.enclosing_radius, depth);
  Scene expected;
  expected.root = DyadicSquare{0, 0, 0};
  for (int n = 1; n <= 3; ++n) {
    double a = 0.5 * std::pow(0.5, n);
    double r = 0.25 * std::pow(0.25, n);
    expected.shapes.push_back(Disc{{0.5 + a, 0.5}, r});
  }
  RasterSet reference = rasterize(expected, depth);
  CHECK(complement.raster.leaves == reference.leaves);
}

TEST_CASE("scene with no shapes yields an empty complement") {
  ComplementRaster complement =
      complement_in_ball(unit_root_scene(), {0.5, 0.5}, 0.5, 6);
  CHECK(complement.raster.empty());
}

TEST_CASE("rasterization is monotone under adding shapes") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.1, 0.9);
  for (int trial = 0; trial < 10; ++trial) {
    Scene scene = unit_root_scene();
    RasterSet prev = rasterize(scene, 5);
    for (int shape = 0; shape < 4; ++shape) {
      scene.shapes.push_back(Disc{{unit(rng), unit(rng)}, 0.05});
      RasterSet next = rasterize(scene, 5);
      CHECK(prev.leafwise_subset_of(next));
      prev = next;
    }
  }
}

TEST_CASE("refinement consistency: coarsened occupancy reproduces coarse raster") {
  std::vector<Scene> corpus;
  {
    Scene s = unit_root_scene();
    s.shapes.push_back(Segment{{0, 0}, {1, 0}});
    corpus.push_back(s);
  }
  {
    Scene s = unit_root_scene();
    s.shapes.push_back(Disc{{0.5, 0.5}, 0.25});
    corpus.push_back(s);
  }
  {
    Scene s = unit_root_scene();
    s.shapes.push_back(Segment{{0.125, 0.125}, {0.875, 0.625}});
    s.shapes.push_back(DyadicSquare{2, 3, 3});
    corpus.push_back(s);
  }
  for (const Scene& scene : corpus) {
    for (int depth = 2; depth <= 5; ++depth) {
      RasterSet fine = rasterize(scene, depth + 1);
      RasterSet coarse = rasterize(scene, depth);
      RasterSet folded = coarsen(fine, depth);
      CHECK(folded.leaves == coarse.leaves);
    }
  }
}

TEST_CASE("inner rasterization under-approximates and segments have no interior") {
  Scene scene = unit_root_scene();
  scene.shapes.push_back(Disc{{0.5, 0.5}, 0.3});
  RasterSet outer = rasterize(scene, 6, RasterMode::Outer);
  RasterSet inner = rasterize(scene, 6, RasterMode::Inner);
  CHECK(!inner.empty());
  CHECK(inner.leafwise_subset_of(outer));
  CHECK(inner.occupied_count() < outer.occupied_count());

  Scene seg = unit_root_scene();
  seg.shapes.push_back(Segment{{0.1, 0.4}, {0.9, 0.4}});
  CHECK(rasterize(seg, 6, RasterMode::Inner).empty());
}

TEST_CASE("depth and containment preconditions are enforced") {
  Scene scene = unit_root_scene();
  scene.shapes.push_back(Disc{{0.9, 0.9}, 0.3});
  CHECK_THROWS_AS(rasterize(scene, 4), Error);

  Scene fine = unit_root_scene();
  fine.shapes.push_back(Disc{{0.5, 0.5}, 0.1});
  CHECK_THROWS_AS(rasterize(fine, depth_cap() + 1), Error);
}

TEST_CASE("parametric domain validation") {
  CHECK_NOTHROW(ParametricDomain::make(DomainKind::Slit, 0.5, 0.5, 0.25, 0.25));
  // radii shrinking slower than centers
  CHECK_THROWS_AS(ParametricDomain::make(DomainKind::Slit, 0.5, 0.25, 0.1, 0.5),
                  Error);
  // first obstacle overlaps the second
  CHECK_THROWS_AS(ParametricDomain::make(DomainKind::Slit, 0.5, 0.5, 0.4, 0.5),
                  Error);
  // degenerate ratios
  CHECK_THROWS_AS(ParametricDomain::make(DomainKind::Slit, 0.5, 1.0, 0.1, 0.25),
                  Error);
}

TEST_CASE("obstacle sequence is ordered and disjoint for the canonical domain") {
  ParametricDomain d = ParametricDomain::make(DomainKind::Slit, 0.5, 0.5, 0.25, 0.25);
  for (int n = 1; n <= 20; ++n) {
    CHECK(d.center_offset(n + 1) + d.obstacle_radius(n + 1) <
          d.center_offset(n) - d.obstacle_radius(n));
  }
}
