#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "lipcap/acceptance.hpp"
#include "lipcap/content.hpp"

using namespace lipcap;

namespace {

Scene unit_segment_scene() {
  Scene scene;
  scene.shapes.push_back(Segment{{0, 0}, {1, 0}});
  return scene;
}

Scene point_scene() {
  Scene scene;
  scene.shapes.push_back(Segment{{0.3, 0.3}, {0.3, 0.3}});
  return scene;
}

RasterSet random_raster(std::mt19937_64& rng, int depth, double density) {
  RasterSet set{DyadicSquare{0, 0, 0}, depth, {}};
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uint64_t cells = 1ull << (2 * depth);
  for (std::uint64_t code = 0; code < cells; ++code) {
    if (unit(rng) < density) set.leaves.push_back(code);
  }
  return set;
}

}  // namespace

TEST_CASE("empty set has zero content") {
  RasterSet empty{DyadicSquare{0, 0, 0}, 4, {}};
  CHECK(dyadic_content(empty, 0.5).value == 0.0);
}

TEST_CASE("unit segment has dyadic content exactly 1 at every depth") {
  Scene scene = unit_segment_scene();
  for (int depth = 1; depth <= 10; ++depth) {
    CHECK(dyadic_content(rasterize(scene, depth), 0.5).value == 1.0);
    CHECK(dyadic_content(rasterize(scene, depth), 0.3).value == 1.0);
  }
}

TEST_CASE("full unit square: the root cover beats four half-squares") {
  Scene scene;
  scene.shapes.push_back(BitmapShape{0, {{0, 0}}});
  CHECK(dyadic_content(rasterize(scene, 3), 0.5).value == 1.0);
}

TEST_CASE("DP equals the exhaustive antichain-cover oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    int depth = 1 + static_cast<int>(rng() % 3);
    RasterSet set = random_raster(rng, depth, 0.45);
    for (double beta : {0.3, 0.7}) {
      Gauge gauge{PowerLawGauge{beta}};
      double dp = dyadic_cover_cost(set, gauge);
      double brute = acceptance::brute_min_cover(set, gauge);
      CHECK(dp == doctest::Approx(brute).epsilon(1e-12));
    }
  }
}

TEST_CASE("power-law gauge content coincides with dyadic content") {
  std::mt19937_64 rng(5);
  RasterSet set = random_raster(rng, 4, 0.3);
  Gauge gauge{PowerLawGauge{0.5}};
  CHECK(gauge_content(set, gauge).value ==
        doctest::Approx(dyadic_content(set, 0.5).value).epsilon(1e-15));
}

TEST_CASE("identically zero tabulated gauge gives zero content") {
  TabulatedGauge zero;
  zero.points = {{1.0 / 1024, 0.0}, {1.0, 0.0}};
  std::mt19937_64 rng(6);
  RasterSet set = random_raster(rng, 4, 0.3);
  CHECK(gauge_content(set, Gauge(zero)).value == 0.0);
}

TEST_CASE("ladder gauge with deep crossover matches the power law on a segment") {
  RasterSet set = rasterize(unit_segment_scene(), 8);
  // crossover 2^{-j/eta} = 2^-16 sits below the leaf size 2^-8
  Gauge ladder{LadderGauge{0.5, 0.5, 8}};
  CHECK(gauge_content(set, ladder).value == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("ladder estimate of the lower content of a segment is 1") {
  ContentResult r = lower_content_estimate(unit_segment_scene(), 0.5, 0.5, 4);
  REQUIRE(r.ladder.size() == 4);
  for (double v : r.ladder) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("ladder values of a single point decay to zero by the closed form") {
  // eta = 2: depths 2j stay uncapped and v_j = 2^j * (2^-2j)^(beta+eta)
  ContentResult r = lower_content_estimate(point_scene(), 0.5, 2.0, 4);
  REQUIRE(r.ladder.size() == 4);
  CHECK(!r.depth_capped);
  for (int j = 1; j <= 4; ++j) {
    double expected = std::exp2(j - 2 * j * 2.5);
    CHECK(r.ladder[j - 1] == doctest::Approx(expected).epsilon(1e-12));
    if (j > 1) CHECK(r.ladder[j - 1] < r.ladder[j - 2]);
  }

  // The schedule from the reference parameters: v_1 = 2^{1-8} uncapped.
  ContentResult s = lower_content_estimate(point_scene(), 0.5, 0.5, 2);
  CHECK(s.ladder[0] == doctest::Approx(std::exp2(-7)).epsilon(1e-12));
  CHECK(s.depth_capped);  // N(2) = 16 exceeds the default cap
}

TEST_CASE("empty scene ladder is identically zero") {
  Scene scene;
  ContentResult r = lower_content_estimate(scene, 0.5, 0.5, 3);
  for (double v : r.ladder) CHECK(v == 0.0);
  CHECK(r.value == 0.0);
}

TEST_CASE("ball bracket of the unit segment contains the segment content") {
  ContentResult r = ball_bracket(rasterize(unit_segment_scene(), 6), 0.5);
  CHECK(r.lower == doctest::Approx(std::exp2(-2.5)).epsilon(1e-12));
  CHECK(r.upper == doctest::Approx(std::exp2(0.25)).epsilon(1e-12));
  CHECK(r.lower <= 1.0);
  CHECK(1.0 <= r.upper);
}

TEST_CASE("ball bracket of the empty set collapses to zero") {
  RasterSet empty{DyadicSquare{0, 0, 0}, 4, {}};
  ContentResult r = ball_bracket(empty, 0.5);
  CHECK(r.lower == 0.0);
  CHECK(r.upper == 0.0);
}

TEST_CASE("halving a scene scales contents by exactly 2^-beta") {
  // Strictly interior shapes: the occupied leaf pattern is reproduced one
  // level deeper, so the covering DP scales term by term.
  Scene big;
  big.shapes.push_back(Segment{{0.1, 0.3}, {0.7, 0.3}});
  big.shapes.push_back(Disc{{0.4, 0.6}, 0.15});
  Scene half;
  half.shapes.push_back(Segment{{0.05, 0.15}, {0.35, 0.15}});
  half.shapes.push_back(Disc{{0.2, 0.3}, 0.075});
  for (double beta : {0.3, 0.5, 0.7}) {
    double a = dyadic_content(rasterize(big, 6), beta).value;
    double b = dyadic_content(rasterize(half, 7), beta).value;
    CHECK(b == doctest::Approx(a * std::exp2(-beta)).epsilon(1e-12));
    ContentResult ba = ball_bracket(rasterize(big, 6), beta);
    ContentResult bb = ball_bracket(rasterize(half, 7), beta);
    CHECK(bb.lower == doctest::Approx(ba.lower * std::exp2(-beta)).epsilon(1e-12));
    CHECK(bb.upper == doctest::Approx(ba.upper * std::exp2(-beta)).epsilon(1e-12));
  }
}

TEST_CASE("content is monotone and subadditive") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    RasterSet a = random_raster(rng, 4, 0.2);
    RasterSet b = random_raster(rng, 4, 0.2);
    RasterSet both{a.root, a.depth, {}};
    std::set_union(a.leaves.begin(), a.leaves.end(), b.leaves.begin(),
                   b.leaves.end(), std::back_inserter(both.leaves));
    double ca = dyadic_content(a, 0.5).value;
    double cb = dyadic_content(b, 0.5).value;
    double cu = dyadic_content(both, 0.5).value;
    CHECK(ca <= cu + 1e-14);
    CHECK(cu <= ca + cb + 1e-14);
  }
}

TEST_CASE("gauge monotonicity: ladder values never exceed the dyadic content") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 8; ++trial) {
    RasterSet set = random_raster(rng, 4, 0.3);
    double dyadic = dyadic_content(set, 0.5).value;
    for (int j = 1; j <= 4; ++j) {
      double vj = gauge_content(set, Gauge(LadderGauge{0.5, 0.5, j})).value;
      CHECK(vj <= dyadic + 1e-14);
    }
  }
}

TEST_CASE("invalid parameters are rejected") {
  RasterSet empty{DyadicSquare{0, 0, 0}, 4, {}};
  CHECK_THROWS_AS(dyadic_content(empty, 1.2), Error);
  CHECK_THROWS_AS(dyadic_content(empty, 0.0), Error);
  TabulatedGauge bad;
  bad.points = {{0.5, 1.0}, {1.0, 0.5}};  // decreasing
  auto make_tabulated = [&] { return Gauge(bad); };
  CHECK_THROWS_AS(make_tabulated(), Error);
  auto make_ladder = [] { return Gauge(LadderGauge{0.5, -1.0, 1}); };
  CHECK_THROWS_AS(make_ladder(), Error);
}
