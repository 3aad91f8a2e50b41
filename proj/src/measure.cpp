#include "lipcap/measure.hpp"

#include <algorithm>
#include <cmath>

namespace lipcap {

double DiscreteMeasure::total() const {
  double sum = 0;
  for (const auto& a : atoms) sum += a.weight;
  return sum;
}

double DiscreteMeasure::ball_mass(Complex center, double radius) const {
  double rr = radius * radius;
  double sum = 0;
  for (const auto& a : atoms) {
    if (std::norm(a.position - center) <= rr) sum += a.weight;
  }
  return sum;
}

Rect DiscreteMeasure::bounding_box() const {
  Rect box{0, 0, 0, 0};
  bool first = true;
  for (const auto& a : atoms) {
    double x = a.position.real(), y = a.position.imag();
    if (first) {
      box = {x, y, x, y};
      first = false;
    } else {
      box.x0 = std::min(box.x0, x);
      box.y0 = std::min(box.y0, y);
      box.x1 = std::max(box.x1, x);
      box.y1 = std::max(box.y1, y);
    }
  }
  return box;
}

namespace {

// Bottom-up capping sweep over the Morton ranges of the occupied leaves.
// Rescales the weights inside any dyadic square whose mass exceeds the cap;
// processing is post-order, so deeper levels are settled first.
double capping_sweep(const std::vector<std::uint64_t>& leaves,
                     std::vector<double>& weights, std::size_t lo,
                     std::size_t hi, int level, int abs_level, int depth,
                     const Gauge& cap_gauge) {
  if (lo == hi) return 0.0;
  if (level == depth) return weights[lo];
  double mass = 0.0;
  int shift = 2 * (depth - level - 1);
  std::size_t begin = lo;
  std::uint64_t child_prefix = leaves[lo] >> shift;
  for (std::size_t i = lo + 1; i <= hi; ++i) {
    std::uint64_t prefix = i < hi ? (leaves[i] >> shift) : 0;
    if (i == hi || prefix != child_prefix) {
      mass += capping_sweep(leaves, weights, begin, i, level + 1, abs_level + 1,
                            depth, cap_gauge);
      if (i < hi) {
        begin = i;
        child_prefix = prefix;
      }
    }
  }
  double cap = cap_gauge.at_side_level(abs_level);
  if (mass > cap) {
    double f = cap / mass;
    for (std::size_t i = lo; i < hi; ++i) weights[i] *= f;
    mass = cap;
  }
  return mass;
}

DiscreteMeasure frostman_with_gauge(const RasterSet& set, const Gauge& cap) {
  if (set.empty()) fail(ErrorCode::EmptySet, "frostman measure of an empty set");
  int leaf_level = set.root.n + set.depth;
  std::vector<double> weights(set.leaves.size(), cap.at_side_level(leaf_level));
  capping_sweep(set.leaves, weights, 0, set.leaves.size(), 0, set.root.n,
                set.depth, cap);
  DiscreteMeasure mu;
  mu.exclusion_radius = set.leaf_side();
  mu.atoms.reserve(set.leaves.size());
  for (std::size_t i = 0; i < set.leaves.size(); ++i) {
    mu.atoms.push_back({set.leaf_center(set.leaves[i]),
                        weights[i] / kGrowthSafety});
  }
  return mu;
}

}  // namespace

DiscreteMeasure frostman(const RasterSet& set, double beta) {
  check_beta(beta);
  return frostman_with_gauge(set, Gauge(PowerLawGauge{beta}));
}

DiscreteMeasure frostman_lower(const RasterSet& set, double beta, double eta,
                               int j) {
  check_beta(beta);
  return frostman_with_gauge(set, Gauge(LadderGauge{beta, eta, j}));
}

GrowthSampling GrowthSampling::defaults_for(const DiscreteMeasure& mu,
                                            int grid_n,
                                            std::size_t max_atom_centers) {
  GrowthSampling s;
  std::size_t stride = 1;
  if (mu.atoms.size() > max_atom_centers && max_atom_centers > 0) {
    stride = (mu.atoms.size() + max_atom_centers - 1) / max_atom_centers;
  }
  for (std::size_t i = 0; i < mu.atoms.size(); i += stride) {
    s.centers.push_back(mu.atoms[i].position);
  }
  Rect box = mu.bounding_box();
  double w = std::max(box.width(), box.height());
  Rect grid_box = box.dilated(std::max(0.5 * w, 0.25));
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      double tx = grid_n == 1 ? 0.5 : static_cast<double>(i) / (grid_n - 1);
      double ty = grid_n == 1 ? 0.5 : static_cast<double>(j) / (grid_n - 1);
      s.centers.push_back({grid_box.x0 + tx * grid_box.width(),
                           grid_box.y0 + ty * grid_box.height()});
    }
  }
  double r_min = mu.exclusion_radius > 0 ? mu.exclusion_radius : std::ldexp(1.0, -14);
  for (double r = 1.0; r >= r_min * (1 - 1e-12); r *= 0.5) s.radii.push_back(r);
  std::reverse(s.radii.begin(), s.radii.end());
  return s;
}

GrowthReport growth_check(const DiscreteMeasure& mu, double beta,
                          const GrowthSampling& sampling) {
  check_beta(beta);
  GrowthReport report;
  if (mu.empty()) return report;

  // x-sorted atoms let each ball query scan only a coordinate window.
  std::vector<WeightedAtom> sorted = mu.atoms;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return a.position.real() < b.position.real();
  });
  std::vector<double> xs(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) xs[i] = sorted[i].position.real();

  for (const Complex& c : sampling.centers) {
    for (double r : sampling.radii) {
      auto lo = std::lower_bound(xs.begin(), xs.end(), c.real() - r);
      auto hi = std::upper_bound(xs.begin(), xs.end(), c.real() + r);
      double rr = r * r;
      double mass = 0;
      for (auto it = lo; it != hi; ++it) {
        const auto& a = sorted[static_cast<std::size_t>(it - xs.begin())];
        if (std::norm(a.position - c) <= rr) mass += a.weight;
      }
      ++report.samples;
      double ratio = mass / std::pow(r, beta);
      if (ratio > report.max_ratio) {
        report.max_ratio = ratio;
        report.worst = {c, r};
      }
    }
  }
  return report;
}

GrowthReport growth_check(const DiscreteMeasure& mu, double beta) {
  return growth_check(mu, beta, GrowthSampling::defaults_for(mu));
}

}  // namespace lipcap
