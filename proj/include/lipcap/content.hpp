#pragma once

#include <variant>
#include <vector>

#include "lipcap/raster.hpp"

namespace lipcap {

struct PowerLawGauge {
  double beta = 0.5;  // h(r) = r^beta
};

struct LadderGauge {
  double beta = 0.5;
  double eta = 0.5;
  int j = 1;  // h(r) = min(r^beta, 2^j r^(beta+eta))
};

struct TabulatedGauge {
  std::vector<std::pair<double, double>> points;  // (r, h), r ascending
};

// Covering cost rule h(r), nondecreasing on (0, 1].
class Gauge {
 public:
  explicit Gauge(PowerLawGauge g);
  explicit Gauge(LadderGauge g);
  explicit Gauge(TabulatedGauge g);

  double operator()(double r) const;
  // Cost of a dyadic square whose absolute side is 2^-level.
  double at_side_level(int level) const;

 private:
  std::variant<PowerLawGauge, LadderGauge, TabulatedGauge> rule_;
};

enum class ContentKind { DyadicExact, GaugeDyadicExact, BallBracket, LadderSequence };

struct ContentResult {
  double value = 0;
  ContentKind kind = ContentKind::DyadicExact;
  double lower = 0, upper = 0;       // BallBracket only
  std::vector<double> ladder;        // LadderSequence values v_j
  bool depth_capped = false;         // ladder schedule hit the depth cap
};

// Exact infimum over covers of the occupied union by dyadic subsquares of the
// root, by the quadtree recursion
//   cost(S) = 0 for empty S, h(side S) at an occupied leaf,
//   min(h(side S), sum of child costs) otherwise.
double dyadic_cover_cost(const RasterSet& set, const Gauge& gauge);

ContentResult dyadic_content(const RasterSet& set, double beta);
ContentResult gauge_content(const RasterSet& set, const Gauge& gauge);

// Ladder schedule v_j = gauge content of the scene rasterized at depth
// ceil(4 j / eta) (capped) under the j-th ladder gauge; the estimate is the
// max over j.
ContentResult lower_content_estimate(const Scene& scene, double beta,
                                     double eta, int schedule_len);

// [2^(-beta-2) M2, 2^(beta/2) M2]: contains the ball content of the set.
ContentResult ball_bracket(const RasterSet& set, double beta);

void check_beta(double beta);

}  // namespace lipcap
