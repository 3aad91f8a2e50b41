#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "lipcap/measure.hpp"
#include "lipcap/transforms.hpp"
#include "lipcap/wiener.hpp"

using namespace lipcap;

namespace {

constexpr double kPi = std::numbers::pi;

DiscreteMeasure delta_at(Complex p, double w = 1.0) {
  DiscreteMeasure mu;
  mu.atoms.push_back({p, w});
  return mu;
}

}  // namespace

TEST_CASE("Poisson kernel closed-form values") {
  CHECK(poisson_kernel({0, 0}, 1.0) == doctest::Approx(1.0 / kPi).epsilon(1e-14));
  for (double t : {0.25, 1.0, 3.0}) {
    CHECK(poisson_kernel({0, 0}, t) ==
          doctest::Approx(1.0 / (kPi * t * t)).epsilon(1e-14));
  }
  // far-field decay ~ 1/(pi |z|^3) at t = 1
  double far = poisson_kernel({100.0, 0.0}, 1.0);
  CHECK(far == doctest::Approx(1.0 / (kPi * 1e6)).epsilon(0.01));
  CHECK_THROWS_AS(poisson_kernel({0, 0}, 0.0), Error);
  CHECK_THROWS_AS(poisson_kernel({0, 0}, -1.0), Error);
}

TEST_CASE("Poisson transform of atoms") {
  DiscreteMeasure delta = delta_at({0, 0});
  for (double t : {0.1, 1.0}) {
    for (Complex z : {Complex{0.3, 0.4}, Complex{-1, 2}}) {
      CHECK(poisson_transform(delta, z, t) ==
            doctest::Approx(poisson_kernel(z, t)).epsilon(1e-14));
    }
  }
  DiscreteMeasure zero;
  CHECK(poisson_transform(zero, {0, 0}, 1.0) == 0.0);

  DiscreteMeasure pair;
  pair.atoms.push_back({{1, 0}, 0.5});
  pair.atoms.push_back({{-1, 0}, 0.5});
  CHECK(poisson_transform(pair, {0, 0}, 0.7) ==
        doctest::Approx(poisson_kernel({1, 0}, 0.7)).epsilon(1e-14));
}

TEST_CASE("delta_0 lies in T_-2 with grid norm exactly 1/pi") {
  TsNormEstimate est = ts_norm_estimate(delta_at({0, 0}), -2.0);
  CHECK(est.value == doctest::Approx(1.0 / kPi).epsilon(1e-12));
  CHECK(std::abs(est.little_o_slope) <= 0.05);
  CHECK(!est.tmin_limited);
}

TEST_CASE("delta_0 fails to lie in T_-1: the grid sup tracks 1/(pi t_min)") {
  PoissonGridSpec grid = PoissonGridSpec::for_measure(delta_at({0, 0}));
  TsNormEstimate est = ts_norm_estimate(delta_at({0, 0}), -1.0, grid);
  CHECK(est.value == doctest::Approx(1.0 / (kPi * grid.t_min)).epsilon(1e-10));
  CHECK(est.tmin_limited);
  CHECK(est.little_o_slope < -0.5);
}

TEST_CASE("zero measure has zero norm") {
  DiscreteMeasure zero;
  PoissonGridSpec grid;
  grid.zbox = {-1, -1, 1, 1};
  TsNormEstimate est = ts_norm_estimate(zero, -2.0, grid);
  CHECK(est.value == 0.0);
}

TEST_CASE("norm estimation rejects s >= 0 and bad grids") {
  CHECK_THROWS_AS(ts_norm_estimate(delta_at({0, 0}), 0.5), Error);
  PoissonGridSpec bad;
  bad.zbox = {0, 0, 1, 1};
  bad.t_min = 2.0;
  bad.t_max = 1.0;
  CHECK_THROWS_AS(ts_norm_estimate(delta_at({0, 0}), -2.0, bad), Error);
}

TEST_CASE("Cauchy transform of a point mass is 1/(pi z)") {
  DiscreteMeasure delta = delta_at({0, 0});
  for (Complex z : {Complex{1, 0}, Complex{0.3, -0.4}, Complex{-2, 1}}) {
    Complex got = cauchy_transform(delta, z);
    Complex want = 1.0 / (kPi * z);
    CHECK(std::abs(got - want) <= 1e-14 * std::abs(want));
  }
  DiscreteMeasure zero;
  CHECK(cauchy_transform(zero, {1, 1}) == Complex{0, 0});
}

TEST_CASE("sector mass pushes the transform real part by 2^n / (sqrt(2) pi)") {
  // Frostman measure on a radial segment inside S_0 within the annulus n = 2
  // around the anchor.
  Scene scene;
  scene.shapes.push_back(Segment{{0.5 + 0.15, 0.5}, {0.5 + 0.22, 0.5}});
  RasterSet raster = rasterize(scene, 8);
  DiscreteMeasure mu = frostman(raster, 0.5);
  Complex value = cauchy_transform(mu, {0.5, 0.5});
  double oriented = -value.real();
  CHECK(oriented >= std::exp2(2) / (std::sqrt(2.0) * kPi) * mu.total());
}

TEST_CASE("evaluation inside the exclusion radius is refused") {
  Scene scene;
  scene.shapes.push_back(Segment{{0.2, 0.5}, {0.4, 0.5}});
  DiscreteMeasure mu = frostman(rasterize(scene, 6), 0.5);
  CHECK_THROWS_AS(cauchy_transform(mu, mu.atoms[0].position), Error);
}

TEST_CASE("pairing against sampled 1/(z-b) reproduces the direct transform") {
  DiscreteMeasure delta = delta_at({1, 0});
  delta.exclusion_radius = 1.0 / 256;
  auto [re, im] = sample_cauchy_chi(delta, {0, 0});
  Complex paired = cauchy_eval_pairing(delta, {0, 0}, re, im);
  Complex direct = cauchy_transform(delta, {0, 0});
  CHECK(std::abs(paired - direct) <= 1e-15);
  CHECK(paired.real() == doctest::Approx(-1.0 / kPi).epsilon(1e-14));

  DiscreteMeasure zero;
  auto [zre, zim] = sample_cauchy_chi(delta, {0, 0});
  CHECK(cauchy_eval_pairing(zero, {0, 0}, zre, zim) == Complex{0, 0});
}

TEST_CASE("pairing matches the transform for a Frostman measure on an annulus") {
  Scene scene;
  scene.shapes.push_back(Disc{{0.68, 0.55}, 0.03});
  scene.shapes.push_back(Segment{{0.52, 0.68}, {0.58, 0.71}});
  DiscreteMeasure mu = frostman(rasterize(scene, 8), 0.5);
  Complex b{0.5, 0.5};
  auto [re, im] = sample_cauchy_chi(mu, b);
  Complex paired = cauchy_eval_pairing(mu, b, re, im);
  Complex direct = cauchy_transform(mu, b);
  CHECK(std::abs(paired - direct) <= 1e-12);
}

TEST_CASE("pairing rejects mismatched samples and points in the support") {
  DiscreteMeasure delta = delta_at({1, 0});
  delta.exclusion_radius = 1.0 / 64;
  auto [re, im] = sample_cauchy_chi(delta, {0, 0});
  GridFunction wrong = re;
  for (double& v : wrong.values) v += 0.5;
  CHECK_THROWS_AS(cauchy_eval_pairing(delta, {0, 0}, wrong, im), Error);
  CHECK_THROWS_AS(cauchy_eval_pairing(delta, {1.0, 1.0 / 128}, re, im), Error);
}

TEST_CASE("Vitushkin localization: identity, annihilation, linearity") {
  Scene scene;
  scene.shapes.push_back(Segment{{0.25, 0.5}, {0.75, 0.5}});
  DiscreteMeasure mu = frostman(rasterize(scene, 6), 0.5);

  GridFunction ones;
  ones.origin = {0, 0};
  ones.spacing = 0.125;
  ones.rows = ones.cols = 9;
  ones.values.assign(81, 1.0);
  DiscreteMeasure same = vitushkin_localize(mu, ones);
  REQUIRE(same.atoms.size() == mu.atoms.size());
  for (std::size_t i = 0; i < mu.atoms.size(); ++i) {
    CHECK(same.atoms[i].weight == mu.atoms[i].weight);
  }

  GridFunction zeros = ones;
  zeros.values.assign(81, 0.0);
  CHECK(vitushkin_localize(mu, zeros).empty());

  // Left/right split: the transforms add back to the original.
  GridFunction left = ones;
  for (int r = 0; r < left.rows; ++r) {
    for (int c = 0; c < left.cols; ++c) {
      left.at(r, c) = left.node(r, c).real() < 0.5 ? 1.0 : 0.0;
    }
  }
  GridFunction right = ones;
  for (std::size_t i = 0; i < right.values.size(); ++i) {
    right.values[i] = 1.0 - left.values[i];
  }
  DiscreteMeasure mu_left = vitushkin_localize(mu, left);
  DiscreteMeasure mu_right = vitushkin_localize(mu, right);
  CHECK(mu_left.total() + mu_right.total() ==
        doctest::Approx(mu.total()).epsilon(1e-13));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    Complex z{unit(rng) * 3 - 1, 1.2 + unit(rng)};
    Complex total = cauchy_transform(mu, z);
    Complex split = cauchy_transform(mu_left, z) + cauchy_transform(mu_right, z);
    CHECK(std::abs(total - split) <= 1e-13 * std::max(1.0, std::abs(total)));
  }

  GridFunction tiny;
  tiny.origin = {0.4, 0.4};
  tiny.spacing = 0.01;
  tiny.rows = tiny.cols = 3;
  tiny.values.assign(9, 1.0);
  CHECK_THROWS_AS(vitushkin_localize(mu, tiny), Error);
}

TEST_CASE("the transform satisfies the Cauchy-Riemann system away from atoms") {
  Scene scene;
  scene.shapes.push_back(Disc{{0.5, 0.5}, 0.05});
  DiscreteMeasure mu = frostman(rasterize(scene, 7), 0.5);
  const double h = 1e-3;
  double worst = 0;
  for (double x = -0.5; x <= 0.0; x += 0.05) {
    for (double y = -0.5; y <= 0.0; y += 0.05) {
      Complex z{x, y};
      auto u = [&](Complex w) { return cauchy_transform(mu, w).real(); };
      auto v = [&](Complex w) { return cauchy_transform(mu, w).imag(); };
      double ux = (u(z + Complex{h, 0}) - u(z - Complex{h, 0})) / (2 * h);
      double uy = (u(z + Complex{0, h}) - u(z - Complex{0, h})) / (2 * h);
      double vx = (v(z + Complex{h, 0}) - v(z - Complex{h, 0})) / (2 * h);
      double vy = (v(z + Complex{0, h}) - v(z - Complex{0, h})) / (2 * h);
      worst = std::max({worst, std::abs(ux - vy), std::abs(uy + vx)});
    }
  }
  CHECK(worst <= 1e-6);  // second-order stencil at h = 1e-3
}

TEST_CASE("dilation covariance of the grid norm") {
  // Exact for the point mass at the origin when s = -2.
  DiscreteMeasure delta = delta_at({0, 0});
  PoissonGridSpec grid;
  grid.zbox = {-1, -1, 1, 1};
  grid.t_min = std::ldexp(1.0, -12);
  grid.t_max = 2;
  double base = ts_norm_estimate(delta, -2.0, grid).value;
  double r = 2.0;
  DiscreteMeasure pushed;
  pushed.atoms.push_back({{0, 0}, 1.0 / (r * r)});
  PoissonGridSpec mirrored = grid;
  mirrored.zbox = {-0.5, -0.5, 0.5, 0.5};
  mirrored.t_min = grid.t_min / r;
  mirrored.t_max = grid.t_max / r;
  double scaled = ts_norm_estimate(pushed, -2.0, mirrored).value;
  CHECK(scaled == doctest::Approx(std::pow(r, -2.0) * base).epsilon(1e-12));

  // Composite measure, default-style grids, 1% agreement.
  DiscreteMeasure pair;
  pair.atoms.push_back({{0.25, 0.0}, 0.5});
  pair.atoms.push_back({{-0.125, 0.125}, 0.25});
  double s = -1.5;
  PoissonGridSpec g1;
  g1.zbox = {-1, -1, 1, 1};
  g1.t_min = std::ldexp(1.0, -10);
  g1.t_max = 2;
  DiscreteMeasure pair_pushed;
  for (const auto& a : pair.atoms) {
    pair_pushed.atoms.push_back({a.position / r, a.weight / (r * r)});
  }
  PoissonGridSpec g2 = g1;
  g2.zbox = {-0.5, -0.5, 0.5, 0.5};
  g2.t_min = g1.t_min / r;
  g2.t_max = g1.t_max / r;
  double n1 = ts_norm_estimate(pair, s, g1).value;
  double n2 = ts_norm_estimate(pair_pushed, s, g2).value;
  CHECK(n2 == doctest::Approx(std::pow(r, s) * n1).epsilon(0.01));
}
