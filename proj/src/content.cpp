#include "lipcap/content.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lipcap {

void check_beta(double beta) {
  if (!(beta > 0) || !(beta < 1)) {
    fail(ErrorCode::BetaOutOfRange, "beta must lie in (0,1)");
  }
}

Gauge::Gauge(PowerLawGauge g) : rule_(g) {
  if (!(g.beta > 0) || !(g.beta < 1)) {
    fail(ErrorCode::GaugeInvalid, "power-law gauge needs beta in (0,1)");
  }
}

Gauge::Gauge(LadderGauge g) : rule_(g) {
  if (!(g.beta > 0) || !(g.beta < 1) || !(g.eta > 0) || g.j < 0) {
    fail(ErrorCode::GaugeInvalid, "ladder gauge needs beta in (0,1), eta > 0, j >= 0");
  }
}

Gauge::Gauge(TabulatedGauge g) : rule_(std::move(g)) {
  const auto& pts = std::get<TabulatedGauge>(rule_).points;
  if (pts.empty()) fail(ErrorCode::GaugeInvalid, "tabulated gauge needs points");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!(pts[i].first > 0) || pts[i].second < 0) {
      fail(ErrorCode::GaugeInvalid, "tabulated gauge needs r > 0, h >= 0");
    }
    if (i > 0 && (pts[i].first <= pts[i - 1].first ||
                  pts[i].second < pts[i - 1].second)) {
      fail(ErrorCode::GaugeInvalid, "tabulated gauge must be nondecreasing");
    }
  }
}

double Gauge::operator()(double r) const {
  return std::visit(
      [r](const auto& g) -> double {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, PowerLawGauge>) {
          return std::pow(r, g.beta);
        } else if constexpr (std::is_same_v<T, LadderGauge>) {
          return std::min(std::pow(r, g.beta),
                          std::ldexp(std::pow(r, g.beta + g.eta), g.j));
        } else {
          const auto& pts = g.points;
          if (r <= pts.front().first) return pts.front().second;
          if (r >= pts.back().first) return pts.back().second;
          auto it = std::lower_bound(
              pts.begin(), pts.end(), r,
              [](const auto& pr, double v) { return pr.first < v; });
          if (it->first == r) return it->second;
          auto prev = std::prev(it);
          double t = (r - prev->first) / (it->first - prev->first);
          return prev->second + t * (it->second - prev->second);
        }
      },
      rule_);
}

double Gauge::at_side_level(int level) const {
  return std::visit(
      [level](const auto& g) -> double {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, PowerLawGauge>) {
          return std::exp2(-level * g.beta);
        } else if constexpr (std::is_same_v<T, LadderGauge>) {
          return std::min(std::exp2(-level * g.beta),
                          std::exp2(g.j - level * (g.beta + g.eta)));
        } else {
          Gauge self(g);
          return self(std::ldexp(1.0, -level));
        }
      },
      rule_);
}

namespace {

// Quadtree fold over a sorted Morton range [lo, hi).
double cover_cost(const std::vector<std::uint64_t>& leaves, std::size_t lo,
                  std::size_t hi, int level, int abs_level, int depth,
                  const Gauge& gauge) {
  if (lo == hi) return 0.0;
  double self_cost = gauge.at_side_level(abs_level);
  if (level == depth) return self_cost;
  int shift = 2 * (depth - level - 1);
  double sum = 0.0;
  std::size_t begin = lo;
  std::uint64_t child_prefix = leaves[lo] >> shift;
  for (std::size_t i = lo + 1; i <= hi; ++i) {
    std::uint64_t prefix = i < hi ? (leaves[i] >> shift) : 0;
    if (i == hi || prefix != child_prefix) {
      sum += cover_cost(leaves, begin, i, level + 1, abs_level + 1, depth, gauge);
      if (i < hi) {
        begin = i;
        child_prefix = prefix;
      }
    }
  }
  return std::min(self_cost, sum);
}

}  // namespace

double dyadic_cover_cost(const RasterSet& set, const Gauge& gauge) {
  return cover_cost(set.leaves, 0, set.leaves.size(), 0, set.root.n, set.depth,
                    gauge);
}

ContentResult dyadic_content(const RasterSet& set, double beta) {
  check_beta(beta);
  ContentResult result;
  result.kind = ContentKind::DyadicExact;
  result.value = dyadic_cover_cost(set, Gauge(PowerLawGauge{beta}));
  return result;
}

ContentResult gauge_content(const RasterSet& set, const Gauge& gauge) {
  ContentResult result;
  result.kind = ContentKind::GaugeDyadicExact;
  result.value = dyadic_cover_cost(set, gauge);
  return result;
}

ContentResult lower_content_estimate(const Scene& scene, double beta,
                                     double eta, int schedule_len) {
  check_beta(beta);
  if (!(eta > 0) || schedule_len < 1) {
    fail(ErrorCode::GaugeInvalid, "ladder schedule needs eta > 0, length >= 1");
  }
  ContentResult result;
  result.kind = ContentKind::LadderSequence;
  for (int j = 1; j <= schedule_len; ++j) {
    int wanted = static_cast<int>(std::ceil(4.0 * j / eta));
    int depth = std::min(wanted, depth_cap());
    if (depth < wanted) result.depth_capped = true;
    RasterSet raster = rasterize(scene, depth);
    double vj = dyadic_cover_cost(raster, Gauge(LadderGauge{beta, eta, j}));
    result.ladder.push_back(vj);
    result.value = std::max(result.value, vj);
  }
  return result;
}

ContentResult ball_bracket(const RasterSet& set, double beta) {
  check_beta(beta);
  double dyadic = dyadic_cover_cost(set, Gauge(PowerLawGauge{beta}));
  ContentResult result;
  result.kind = ContentKind::BallBracket;
  result.value = dyadic;
  result.lower = std::exp2(-beta - 2) * dyadic;
  result.upper = std::exp2(beta / 2) * dyadic;
  return result;
}

}  // namespace lipcap
