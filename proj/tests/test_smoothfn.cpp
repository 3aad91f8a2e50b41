#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "lipcap/grid_function.hpp"

using namespace lipcap;

namespace {

GridFunction disc_indicator(Complex center, double radius) {
  GridFunction f;
  f.spacing = 2.2 * radius / 200;
  f.origin = center - Complex{1.1 * radius, 1.1 * radius};
  f.rows = f.cols = 201;
  f.values.resize(static_cast<std::size_t>(f.rows) * f.cols);
  for (int r = 0; r < f.rows; ++r) {
    for (int c = 0; c < f.cols; ++c) {
      f.at(r, c) = std::abs(f.node(r, c) - center) <= radius ? 1.0 : 0.0;
    }
  }
  return f;
}

GridFunction radial_bump(Complex center, double scale, int nodes = 387) {
  SmoothProfile profile;
  double radius = profile.cutoff * scale;
  GridFunction f;
  f.spacing = 2 * radius / (nodes - 3);
  f.origin = center - Complex{radius + f.spacing, radius + f.spacing};
  f.rows = f.cols = nodes;
  f.values.resize(static_cast<std::size_t>(f.rows) * f.cols);
  for (int r = 0; r < f.rows; ++r) {
    for (int c = 0; c < f.cols; ++c) {
      f.at(r, c) = profile(std::abs(f.node(r, c) - center) / scale);
    }
  }
  return f;
}

}  // namespace

TEST_CASE("smooth profile: plateau, cutoff, monotone transition") {
  SmoothProfile rho;
  CHECK(rho(0.0) == 1.0);
  CHECK(rho(0.625) == 1.0);
  CHECK(rho(0.75) == 0.0);
  CHECK(rho(1.0) == 0.0);
  double prev = 1.0;
  for (double r = 0.625; r <= 0.75; r += 0.005) {
    double v = rho(r);
    CHECK(v <= prev + 1e-15);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    prev = v;
  }
  CHECK(rho(0.6875) > 0.0);
  CHECK(rho(0.6875) < 1.0);
}

TEST_CASE("sharp indicators: N_0 works, derivatives are refused") {
  GridFunction ind = disc_indicator({0.5, 0.5}, 0.5);
  CHECK(nk_seminorm(ind, 0).value == 1.0);
  CHECK_THROWS_AS(nk_seminorm(ind, 1), Error);
}

TEST_CASE("smoothed bumps pass the two-resolution derivative check") {
  GridFunction coarse = radial_bump({0.5, 0.5}, 0.4, 387);
  GridFunction fine = radial_bump({0.5, 0.5}, 0.4, 771);
  // Higher orders converge slowly: the exponential profile's derivatives
  // spike near the plateau edge.
  const double tolerance[] = {0.01, 0.05, 0.30};
  for (int k = 1; k <= 3; ++k) {
    double a = nk_seminorm(coarse, k).value;
    double b = nk_seminorm(fine, k).value;
    CHECK(a == doctest::Approx(b).epsilon(tolerance[k - 1]));
  }
}

TEST_CASE("standard pincher geometry") {
  SmoothProfile profile;
  GridFunction p1 = standard_pincher({0, 0}, 1, profile);
  // support inside B(0, 3/4)
  Rect support = p1.support_bbox();
  CHECK(support.x0 >= -0.75 - 1e-12);
  CHECK(support.x1 <= 0.75 + 1e-12);
  CHECK(support.y0 >= -0.75 - 1e-12);
  CHECK(support.y1 <= 0.75 + 1e-12);
  // identically 1 on B(0, 5/8)
  for (int r = 0; r < p1.rows; ++r) {
    for (int c = 0; c < p1.cols; ++c) {
      if (std::abs(p1.node(r, c)) <= 0.625) CHECK(p1.at(r, c) == 1.0);
    }
  }
  // support diameter <= 3/(2n)
  for (int n : {1, 2, 4}) {
    GridFunction pn = standard_pincher({0.5, 0.5}, n, profile);
    CHECK(pn.support_diameter() <= 1.5 / n * std::sqrt(2.0) + 1e-12);
    CHECK(nk_seminorm(pn, 0).value == 1.0);
  }
}

TEST_CASE("pincher N_2 is scale-free in the index") {
  double lo = 1e300, hi = 0;
  for (int n : {1, 2, 4, 8}) {
    double v = nk_seminorm(standard_pincher({0.5, 0.5}, n), 2).value;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(hi <= 1.02 * lo);
}

TEST_CASE("N_k homogeneity is exact for dyadic factors") {
  GridFunction f = radial_bump({0.5, 0.5}, 0.3);
  for (int k = 0; k <= 3; ++k) {
    double base = nk_seminorm(f, k).value;
    CHECK(nk_seminorm(f.scaled(2.0), k).value == 2.0 * base);
    CHECK(nk_seminorm(f.scaled(0.25), k).value == 0.25 * base);
  }
}

TEST_CASE("seminorm chain N_0 <= N_1 <= N_2 <= N_3 on the smooth corpus") {
  std::vector<GridFunction> corpus;
  corpus.push_back(radial_bump({0.5, 0.5}, 0.35));
  corpus.push_back(standard_pincher({0.3, 0.3}, 2));
  TessPartition tess = tess_partition(TessWindow{1, 0, 0, 3, 3});
  corpus.push_back(tess.psi[4]);
  for (const GridFunction& f : corpus) {
    double prev = nk_seminorm(f, 0).value;
    for (int k = 1; k <= 3; ++k) {
      double next = nk_seminorm(f, k).value;
      CHECK(prev <= next * 1.02);
      prev = next;
    }
  }
}

TEST_CASE("N_k is submultiplicative with Leibniz constant 2^k") {
  GridFunction a = radial_bump({0.45, 0.5}, 0.4, 161);
  GridFunction b = a;
  SmoothProfile profile;
  for (int r = 0; r < b.rows; ++r) {
    for (int c = 0; c < b.cols; ++c) {
      b.at(r, c) = profile(std::abs(b.node(r, c) - Complex{0.55, 0.5}) / 0.35);
    }
  }
  GridFunction prod = a;
  for (std::size_t i = 0; i < prod.values.size(); ++i) {
    prod.values[i] = a.values[i] * b.values[i];
  }
  for (int k = 1; k <= 3; ++k) {
    double lhs = nk_seminorm(prod, k).value;
    double rhs = std::exp2(k) * nk_seminorm(a, k).value * nk_seminorm(b, k).value;
    CHECK(lhs <= 1.05 * rhs);
  }
}

TEST_CASE("scale invariance of N_k within 1%") {
  double reference = nk_seminorm(radial_bump({0.5, 0.5}, 1.0), 2).value;
  for (double scale : {0.25, 0.5, 2.0, 4.0}) {
    double value = nk_seminorm(radial_bump({0.5, 0.5}, scale), 2).value;
    CHECK(value == doctest::Approx(reference).epsilon(0.01));
  }
}

TEST_CASE("tessellation partition: unit sum, tau range, supports") {
  TessPartition tess = tess_partition(TessWindow{1, 0, 0, 6, 6});
  REQUIRE(tess.psi.size() == 36);

  // Sum over the window equals 1 on the central 4x4 block.
  const GridFunction& grid = tess.psi.front();
  Rect central{0.5, 0.5, 2.5, 2.5};
  for (int r = 0; r < grid.rows; r += 3) {
    for (int c = 0; c < grid.cols; c += 3) {
      if (!central.contains(grid.node(r, c))) continue;
      double sum = 0;
      for (const GridFunction& psi : tess.psi) sum += psi.at(r, c);
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
  }

  // tau stays within [1, 4].
  for (double v : tess.tau.values) {
    CHECK(v >= 1.0 - 1e-12);
    CHECK(v <= 4.0 + 1e-12);
  }

  // each psi_S is supported in (3/2) S.
  for (std::size_t i = 0; i < tess.psi.size(); ++i) {
    Rect allowed = tess.squares[i].dilated_rect(1.5);
    const GridFunction& psi = tess.psi[i];
    for (int r = 0; r < psi.rows; ++r) {
      for (int c = 0; c < psi.cols; ++c) {
        if (psi.at(r, c) != 0.0) CHECK(allowed.contains(psi.node(r, c)));
      }
    }
  }
}

TEST_CASE("coarse sampling of a smooth function is rejected for k >= 1") {
  GridFunction f = radial_bump({0.5, 0.5}, 0.4);
  GridFunction coarse;
  coarse.origin = f.origin;
  coarse.spacing = f.spacing * 16;
  coarse.rows = f.rows / 16;
  coarse.cols = f.cols / 16;
  coarse.values.resize(static_cast<std::size_t>(coarse.rows) * coarse.cols);
  SmoothProfile profile;
  for (int r = 0; r < coarse.rows; ++r) {
    for (int c = 0; c < coarse.cols; ++c) {
      coarse.at(r, c) = profile(std::abs(coarse.node(r, c) - Complex{0.5, 0.5}) / 0.4);
    }
  }
  CHECK_THROWS_AS(nk_seminorm(coarse, 2), Error);
}
