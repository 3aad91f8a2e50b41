#include "lipcap/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "lipcap/measure.hpp"
#include "lipcap/partition.hpp"
#include "lipcap/transforms.hpp"
#include "lipcap/wiener.hpp"

namespace lipcap::acceptance {

namespace {

constexpr double kPi = std::numbers::pi;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Scene unit_segment_scene() {
  Scene scene;
  scene.shapes.push_back(Segment{{0, 0}, {1, 0}});
  return scene;
}

Scene dyadic_square_scene(std::int64_t m, std::int64_t r, int n) {
  Scene scene;
  scene.shapes.push_back(DyadicSquare{m, r, n});
  return scene;
}

// Quarter-corner Cantor dust: every generation keeps the four corner
// subcells of side a quarter of the parent.
Scene cantor_dust_scene(int generations) {
  std::vector<std::pair<std::int64_t, std::int64_t>> cells = {{0, 0}};
  int level = 0;
  for (int g = 0; g < generations; ++g) {
    std::vector<std::pair<std::int64_t, std::int64_t>> next;
    for (const auto& [m, r] : cells) {
      for (std::int64_t dm : {std::int64_t{0}, std::int64_t{3}}) {
        for (std::int64_t dr : {std::int64_t{0}, std::int64_t{3}}) {
          next.emplace_back(4 * m + dm, 4 * r + dr);
        }
      }
    }
    cells = std::move(next);
    level += 2;
  }
  Scene scene;
  scene.shapes.push_back(BitmapShape{level, cells});
  return scene;
}

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << what;
    }
  }
  void note(const std::string& text) {
    if (detail.tellp() > 0) detail << "; ";
    detail << text;
  }
};

ParametricDomain canonical_domain(DomainKind kind) {
  return ParametricDomain::make(kind, 0.5, 0.5, 0.25, 0.25);
}

// --- criterion 1: slit threshold ------------------------------------------

CriterionResult criterion_1() {
  Check c;
  ParametricDomain slit = canonical_domain(DomainKind::Slit);
  auto verdict_at = [&](double s, int k) {
    SeriesSpec spec;
    spec.s = s;
    spec.k = k;
    return classify_parametric(slit, spec).verdict;
  };
  (void)verdict_at(-0.4, 0);  // warm up before timing
  auto start = Clock::now();
  Verdict a = verdict_at(-0.4, 0);
  Verdict b = verdict_at(-0.5, 0);
  Verdict d = verdict_at(-0.6, 0);
  double elapsed = seconds_since(start);
  c.expect(a == Verdict::Converges, "s=-0.4 must converge");
  c.expect(b == Verdict::Diverges, "s=-0.5 must diverge");
  c.expect(d == Verdict::Diverges, "s=-0.6 must diverge");
  c.expect(elapsed < 1e-3, "runtime exceeded 1 ms");
  c.note("elapsed " + std::to_string(elapsed * 1e6) + " us");
  return {1, "slit threshold s > -1/2 (k=0)", c.ok, c.detail.str()};
}

// --- criterion 2: derivation order shift ----------------------------------

CriterionResult criterion_2() {
  Check c;
  ParametricDomain slit = canonical_domain(DomainKind::Slit);
  struct Case { double s; Verdict want; };
  const Case cases[] = {{-0.7, Verdict::Converges},
                        {-0.75, Verdict::Diverges},
                        {-0.8, Verdict::Diverges}};
  for (const auto& cs : cases) {
    SeriesSpec spec;
    spec.s = cs.s;
    spec.k = 1;
    Verdict got = classify_parametric(slit, spec).verdict;
    c.expect(got == cs.want, "k=1, s=" + std::to_string(cs.s) + ": got " +
                                 verdict_name(got));
  }
  return {2, "derivation order shift (k=1, threshold -3/4)", c.ok, c.detail.str()};
}

// --- criterion 3: road-runner equivalence ---------------------------------

CriterionResult criterion_3() {
  Check c;
  ParametricDomain slit = canonical_domain(DomainKind::Slit);
  ParametricDomain runner = canonical_domain(DomainKind::RoadRunner);
  for (int k = 0; k <= 2; ++k) {
    for (int j = 0; j <= 16; ++j) {
      double s = -(18.0 - j) / 20.0;  // -0.9 .. -0.1 step 0.05
      SeriesSpec spec;
      spec.s = s;
      spec.k = k;
      Verdict vs = classify_parametric(slit, spec).verdict;
      Verdict vr = classify_parametric(runner, spec).verdict;
      c.expect(vs == vr, "verdicts differ at s=" + std::to_string(s) +
                             ", k=" + std::to_string(k));
    }
  }
  return {3, "slit/road-runner verdict equivalence", c.ok, c.detail.str()};
}

// --- criterion 4: segment content and DP oracle ---------------------------

CriterionResult criterion_4(std::uint64_t seed) {
  Check c;
  auto start = Clock::now();
  Scene segment = unit_segment_scene();
  for (int depth = 2; depth <= 10; ++depth) {
    double value = dyadic_content(rasterize(segment, depth), 0.5).value;
    c.expect(value == 1.0, "segment content at depth " + std::to_string(depth) +
                               " = " + std::to_string(value));
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double betas[] = {0.3, 0.5, 0.7};
  for (int trial = 0; trial < 50; ++trial) {
    int depth = 1 + static_cast<int>(rng() % 3);
    RasterSet set{DyadicSquare{0, 0, 0}, depth, {}};
    std::uint64_t cells = 1ull << (2 * depth);
    for (std::uint64_t code = 0; code < cells; ++code) {
      if (unit(rng) < 0.4) set.leaves.push_back(code);
    }
    double beta = betas[trial % 3];
    Gauge gauge{PowerLawGauge{beta}};
    double dp = dyadic_cover_cost(set, gauge);
    double brute = brute_min_cover(set, gauge);
    c.expect(std::abs(dp - brute) <= 1e-12 * std::max(1.0, brute),
             "DP != brute force on trial " + std::to_string(trial));
  }
  double elapsed = seconds_since(start);
  c.expect(elapsed < 5.0, "runtime exceeded 5 s");
  c.note("elapsed " + std::to_string(elapsed) + " s");
  return {4, "segment content d^beta and DP optimality oracle", c.ok,
          c.detail.str()};
}

// --- criterion 5: comparison constants ------------------------------------

CriterionResult criterion_5(std::uint64_t seed) {
  Check c;
  std::mt19937_64 rng(seed ^ 0x5a5a5a5aull);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double betas[] = {0.3, 0.5, 0.7};
  const int depth = 6;
  double h = std::ldexp(1.0, -depth);
  int compared = 0;
  double ratio_min = 1e300, ratio_max = 0;

  for (int trial = 0; trial < 100; ++trial) {
    // Annulus-aligned random slit: q = 1/2 keeps obstacle n inside A_n, and
    // the radius window keeps obstacle 1 resolved at depth 6.
    double a0 = 0.64 + 0.11 * unit(rng);
    double p = 0.25 + 0.25 * unit(rng);
    double margin = a0 - 0.5;
    double r1_max = std::min(0.45 * margin, 0.09);
    double r1 = 0.0625 + (r1_max - 0.0625) * unit(rng);
    ParametricDomain domain =
        ParametricDomain::make(DomainKind::Slit, a0, 0.5, r1 / p, p);
    ComplementRaster complement =
        complement_in_ball(domain, kParametricAnchor, 0.5, depth);
    double beta = betas[trial % 3];
    double lo = std::exp2(-beta - 2), hi = std::exp2(beta + 2);

    for (int n = 1; n + 2 <= depth; ++n) {
      double a = domain.center_offset(n);
      double r = domain.obstacle_radius(n);
      double rin = std::ldexp(1.0, -n - 1), rout = std::ldexp(1.0, -n);
      bool aligned = a - r >= rin && a + r <= rout;
      bool resolved = r >= 4 * h;
      if (!aligned || !resolved) continue;
      Annulus ann{kParametricAnchor, n};
      RasterSet clip = annulus_clip(complement.raster, ann);
      double raster_term = std::exp2(n) * dyadic_content(clip, beta).value;
      double closed_term = std::pow(r, beta) / a;
      double ratio = raster_term / closed_term;
      ratio_min = std::min(ratio_min, ratio);
      ratio_max = std::max(ratio_max, ratio);
      ++compared;
      c.expect(ratio >= lo && ratio <= hi,
               "trial " + std::to_string(trial) + " n=" + std::to_string(n) +
                   " beta=" + std::to_string(beta) + " ratio=" +
                   std::to_string(ratio));
    }
  }
  c.expect(compared >= 100, "too few resolvable terms compared");
  c.note("compared " + std::to_string(compared) + " terms, ratios in [" +
         std::to_string(ratio_min) + ", " + std::to_string(ratio_max) + "]");

  ContentResult bracket = ball_bracket(rasterize(unit_segment_scene(), 6), 0.5);
  c.expect(bracket.lower <= 1.0 && 1.0 <= bracket.upper,
           "segment ball bracket misses 1.0");
  return {5, "comparison-constant bracket and segment ball bracket", c.ok,
          c.detail.str()};
}

// --- criterion 6: delta_0 norm --------------------------------------------

CriterionResult criterion_6() {
  Check c;
  DiscreteMeasure delta;
  delta.atoms.push_back({{0, 0}, 1.0});
  TsNormEstimate est = ts_norm_estimate(delta, -2.0);
  c.expect(std::abs(est.value - 1.0 / kPi) <= 1e-9,
           "value " + std::to_string(est.value) + " != 1/pi");
  c.expect(std::abs(est.little_o_slope) <= 0.05,
           "little-o slope " + std::to_string(est.little_o_slope));
  c.note("value " + std::to_string(est.value) + ", slope " +
         std::to_string(est.little_o_slope));
  return {6, "delta_0 in T_-2 with norm 1/pi, not in C_-2", c.ok, c.detail.str()};
}

// --- criterion 7: Frostman growth -----------------------------------------

CriterionResult criterion_7() {
  Check c;
  struct Entry { const char* name; Scene scene; int depth; double beta; };
  std::vector<Entry> corpus;
  corpus.push_back({"segment", unit_segment_scene(), 8, 0.5});
  corpus.push_back({"segment-b7", unit_segment_scene(), 8, 0.7});
  corpus.push_back({"square", dyadic_square_scene(0, 0, 1), 6, 0.5});
  corpus.push_back({"full-square", dyadic_square_scene(0, 0, 0), 5, 0.5});
  corpus.push_back({"cantor-dust", cantor_dust_scene(4), 8, 0.5});
  for (const auto& entry : corpus) {
    RasterSet raster = rasterize(entry.scene, entry.depth);
    DiscreteMeasure mu = frostman(raster, entry.beta);
    GrowthReport growth = growth_check(mu, entry.beta);
    double content = dyadic_content(raster, entry.beta).value;
    c.expect(growth.max_ratio <= 1.0,
             std::string(entry.name) + ": growth ratio " +
                 std::to_string(growth.max_ratio));
    c.expect(mu.total() >= content / kGrowthSafety - 1e-12,
             std::string(entry.name) + ": mass below content/8");
  }
  return {7, "Frostman growth <= 1 and mass >= content/8", c.ok, c.detail.str()};
}

// --- criterion 8: proof-estimate uniformity -------------------------------

CriterionResult criterion_8() {
  Check c;
  auto start = Clock::now();
  ParametricDomain slit = canonical_domain(DomainKind::Slit);
  SeriesSpec spec;
  spec.s = -0.5;
  DivergenceWitness w6 = divergence_witness(slit, spec, 6, 12);
  DivergenceWitness w12 = divergence_witness(slit, spec, 12, 12);
  c.expect(w12.norm_bound_grid <= 1.2 * w6.norm_bound_grid,
           "norm bound ratio " +
               std::to_string(w12.norm_bound_grid / w6.norm_bound_grid));
  double re6 = w6.value_at_zero.real();
  double re12 = w12.value_at_zero.real();
  c.expect(re12 > re6, "Re(value) did not increase");
  double increment = 0;
  for (const auto& term : w12.terms) {
    if (term.n > 6) increment += term.sector_lower_bound;
  }
  c.expect(re12 - re6 >= 0.5 * increment,
           "Re increment below half the sector bound");
  for (const auto& term : w12.terms) {
    c.expect(term.re_contribution >= term.sector_lower_bound * (1 - 1e-9),
             "term " + std::to_string(term.n) + " below its sector bound");
  }
  double elapsed = seconds_since(start);
  c.expect(elapsed < 30.0, "runtime exceeded 30 s");
  c.note("norm ratio " + std::to_string(w12.norm_bound_grid / w6.norm_bound_grid) +
         ", Re " + std::to_string(re6) + " -> " + std::to_string(re12) +
         ", elapsed " + std::to_string(elapsed) + " s");
  return {8, "divergence witness: bounded grid norm, growing value", c.ok,
          c.detail.str()};
}

// --- criterion 9: partition lemma -----------------------------------------

std::vector<DyadicSquare> leaf_cover(const RasterSet& raster) {
  std::vector<DyadicSquare> cover;
  int level = raster.root.n + raster.depth;
  for (auto code : raster.leaves) {
    std::uint32_t ix, iy;
    morton_decode(code, ix, iy);
    cover.push_back(DyadicSquare{
        raster.root.m * (std::int64_t{1} << raster.depth) + ix,
        raster.root.r * (std::int64_t{1} << raster.depth) + iy, level});
  }
  return cover;
}

CriterionResult criterion_9() {
  Check c;
  std::vector<std::pair<const char*, Scene>> corpus;
  corpus.emplace_back("segment", unit_segment_scene());
  Scene two_squares;
  two_squares.shapes.push_back(DyadicSquare{0, 0, 2});
  two_squares.shapes.push_back(DyadicSquare{1, 0, 2});
  corpus.emplace_back("two-squares", two_squares);
  Scene diagonal;
  diagonal.shapes.push_back(Segment{{0.125, 0.125}, {0.625, 0.375}});
  corpus.emplace_back("diagonal", diagonal);

  for (const auto& [name, scene] : corpus) {
    double max_n3_by_depth[2] = {0, 0};
    for (int which = 0; which < 2; ++which) {
      int depth = which == 0 ? 3 : 6;
      RasterSet raster = rasterize(scene, depth);
      PartitionResult part = build_partition(leaf_cover(raster), raster, 3);
      c.expect(part.sum_error_max <= 1e-9,
               std::string(name) + " depth " + std::to_string(depth) +
                   ": sum error " + std::to_string(part.sum_error_max));
      c.expect(part.support_violations == 0,
               std::string(name) + ": support violations");
      max_n3_by_depth[which] = part.max_nk;
    }
    c.expect(max_n3_by_depth[1] <= 1.5 * max_n3_by_depth[0],
             std::string(name) + ": N3 grew with depth (" +
                 std::to_string(max_n3_by_depth[0]) + " -> " +
                 std::to_string(max_n3_by_depth[1]) + ")");
  }
  return {9, "partition of unity: sum, supports, uniform N_3", c.ok,
          c.detail.str()};
}

// --- criterion 10: seminorm algebra ---------------------------------------

GridFunction sample_disc_bump(Complex center, double scale, double ratio,
                              const SmoothProfile& profile) {
  // rho(|ratio * (z - center)| / scale) on an adapted grid.
  double radius = profile.cutoff * scale / ratio;
  GridFunction f;
  f.spacing = 2 * radius / 384;
  f.origin = center - Complex{radius + f.spacing, radius + f.spacing};
  f.rows = f.cols = 387;
  f.values.resize(static_cast<std::size_t>(f.rows) * f.cols);
  for (int r = 0; r < f.rows; ++r) {
    for (int col = 0; col < f.cols; ++col) {
      f.at(r, col) = profile(ratio * std::abs(f.node(r, col) - center) / scale);
    }
  }
  return f;
}

CriterionResult criterion_10(std::uint64_t seed) {
  Check c;
  SmoothProfile profile;

  // Homogeneity: exact for power-of-two factors.
  GridFunction base = standard_pincher({0.3, 0.4}, 2, profile);
  for (int k = 0; k <= 3; ++k) {
    double nk = nk_seminorm(base, k).value;
    for (double kappa : {2.0, 0.5, 4.0}) {
      double scaled = nk_seminorm(base.scaled(kappa), k).value;
      c.expect(scaled == kappa * nk, "homogeneity failed for power-of-two factor");
    }
    double generic = nk_seminorm(base.scaled(1.7), k).value;
    c.expect(std::abs(generic - 1.7 * nk) <= 1e-12 * std::max(1.0, nk),
             "homogeneity failed for generic factor");
  }

  // Submultiplicativity with finite-difference slack.
  std::mt19937_64 rng(seed ^ 0xabcdefull);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    Complex center{0.4 + 0.2 * unit(rng), 0.4 + 0.2 * unit(rng)};
    double scale_a = 0.25 + 0.15 * unit(rng);
    double scale_b = 0.25 + 0.15 * unit(rng);
    GridFunction a = sample_disc_bump(center, scale_a, 1.0, profile);
    GridFunction b = a;
    for (int r = 0; r < b.rows; ++r) {
      for (int col = 0; col < b.cols; ++col) {
        b.at(r, col) = profile(std::abs(b.node(r, col) - center) / scale_b);
      }
    }
    GridFunction prod = a;
    for (std::size_t i = 0; i < prod.values.size(); ++i) {
      prod.values[i] = a.values[i] * b.values[i];
    }
    for (int k = 1; k <= 3; ++k) {
      double lhs = nk_seminorm(prod, k).value;
      double rhs = std::exp2(k) * nk_seminorm(a, k).value * nk_seminorm(b, k).value;
      c.expect(lhs <= 1.05 * rhs, "submultiplicativity failed at k=" +
                                       std::to_string(k));
    }
  }

  // Scale invariance within 1%.
  for (int k = 0; k <= 3; ++k) {
    double reference = nk_seminorm(sample_disc_bump({0.5, 0.5}, 1.0, 1.0, profile), k).value;
    for (double r : {0.25, 0.5, 2.0, 4.0}) {
      double scaled = nk_seminorm(sample_disc_bump({0.5, 0.5}, 1.0, r, profile), k).value;
      c.expect(std::abs(scaled - reference) <= 0.01 * std::max(reference, 1e-30),
               "scale invariance failed at k=" + std::to_string(k) +
                   " r=" + std::to_string(r));
    }
  }

  // Standard pincher: N0 = 1 and N2 constant in n within 2%.
  double n2_min = 1e300, n2_max = 0;
  for (int n : {1, 2, 4, 8}) {
    GridFunction pincher = standard_pincher({0.5, 0.5}, n, profile);
    c.expect(nk_seminorm(pincher, 0).value == 1.0, "pincher N0 != 1");
    double n2 = nk_seminorm(pincher, 2).value;
    n2_min = std::min(n2_min, n2);
    n2_max = std::max(n2_max, n2);
  }
  c.expect(n2_max <= 1.02 * n2_min, "pincher N2 varies by more than 2%");
  return {10, "N_k homogeneity, submultiplicativity, scale invariance", c.ok,
          c.detail.str()};
}

// --- criterion 11: Cauchy identities --------------------------------------

CriterionResult criterion_11() {
  Check c;
  // Frostman measure supported inside A_2((0.5, 0.5)).
  Scene scene;
  scene.shapes.push_back(Segment{{0.64, 0.52}, {0.73, 0.52}});
  scene.shapes.push_back(Disc{{0.52, 0.66}, 0.04});
  RasterSet raster = rasterize(scene, 8);
  DiscreteMeasure mu = frostman(raster, 0.5);
  Complex center{0.5, 0.5};

  for (int i = 0; i < 20; ++i) {
    double angle = 2 * kPi * i / 20.0;
    double radius = i % 2 == 0 ? 0.45 : 0.02;
    Complex b = center + std::polar(radius, angle);
    auto [chi_re, chi_im] = sample_cauchy_chi(mu, b);
    Complex direct = cauchy_transform(mu, b);
    Complex paired = cauchy_eval_pairing(mu, b, chi_re, chi_im);
    c.expect(std::abs(direct - paired) <= 1e-12,
             "pairing mismatch " + std::to_string(std::abs(direct - paired)));
  }

  // Vitushkin localization additivity, atom by atom.
  TessPartition tess = tess_partition(TessWindow{2, 1, 1, 4, 4});
  const GridFunction& phi1 = tess.psi[5];
  const GridFunction& phi2 = tess.psi[6];
  GridFunction both = phi1;
  for (std::size_t i = 0; i < both.values.size(); ++i) {
    both.values[i] += phi2.values[i];
  }
  DiscreteMeasure via_sum = vitushkin_localize(mu, both);
  DiscreteMeasure part1 = vitushkin_localize(mu, phi1);
  DiscreteMeasure part2 = vitushkin_localize(mu, phi2);
  auto weight_at = [](const DiscreteMeasure& m, Complex p) {
    for (const auto& a : m.atoms) {
      if (a.position == p) return a.weight;
    }
    return 0.0;
  };
  for (const auto& a : mu.atoms) {
    double lhs = weight_at(via_sum, a.position);
    double rhs = weight_at(part1, a.position) + weight_at(part2, a.position);
    c.expect(std::abs(lhs - rhs) <= 1e-14 * std::max(std::abs(lhs), a.weight),
             "localization additivity broke at an atom");
  }
  return {11, "Cauchy pairing identity and localization additivity", c.ok,
          c.detail.str()};
}

}  // namespace

double brute_min_cover(const RasterSet& set, const Gauge& gauge) {
  // Enumerates every antichain cover cost via nested child choices.
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, std::size_t, int, int, double,
                     const std::function<void(double)>&)>
      enumerate = [&](std::size_t lo, std::size_t hi, int level, int abs_level,
                      double partial, const std::function<void(double)>& emit) {
        if (lo == hi) {
          emit(partial);
          return;
        }
        double self_cost = gauge.at_side_level(abs_level);
        emit(partial + self_cost);
        if (level == set.depth) return;
        int shift = 2 * (set.depth - level - 1);
        std::vector<std::pair<std::size_t, std::size_t>> children;
        std::size_t begin = lo;
        std::uint64_t prefix = set.leaves[lo] >> shift;
        for (std::size_t i = lo + 1; i <= hi; ++i) {
          std::uint64_t pre = i < hi ? (set.leaves[i] >> shift) : 0;
          if (i == hi || pre != prefix) {
            children.emplace_back(begin, i);
            if (i < hi) {
              begin = i;
              prefix = pre;
            }
          }
        }
        std::function<void(std::size_t, double)> product =
            [&](std::size_t idx, double acc) {
              if (idx == children.size()) {
                emit(acc);
                return;
              }
              enumerate(children[idx].first, children[idx].second, level + 1,
                        abs_level + 1, acc,
                        [&](double cost) { product(idx + 1, cost); });
            };
        product(0, partial);
      };
  enumerate(0, set.leaves.size(), 0, set.root.n, 0.0,
            [&](double cost) { best = std::min(best, cost); });
  return best;
}

std::vector<CriterionResult> run_all(std::uint64_t seed) {
  std::vector<CriterionResult> results;
  results.push_back(criterion_1());
  results.push_back(criterion_2());
  results.push_back(criterion_3());
  results.push_back(criterion_4(seed));
  results.push_back(criterion_5(seed));
  results.push_back(criterion_6());
  results.push_back(criterion_7());
  results.push_back(criterion_8());
  results.push_back(criterion_9());
  results.push_back(criterion_10(seed));
  results.push_back(criterion_11());
  return results;
}

bool report(std::ostream& out, std::uint64_t seed) {
  bool all = true;
  for (const auto& r : run_all(seed)) {
    out << "criterion " << r.id << " [" << (r.passed ? "PASS" : "FAIL") << "] "
        << r.name;
    if (!r.detail.empty()) out << " -- " << r.detail;
    out << "\n";
    all = all && r.passed;
  }
  out << (all ? "all criteria passed" : "FAILURES present") << "\n";
  return all;
}

}  // namespace lipcap::acceptance
