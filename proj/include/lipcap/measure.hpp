#pragma once

#include <optional>
#include <vector>

#include "lipcap/content.hpp"
#include "lipcap/raster.hpp"

namespace lipcap {

struct WeightedAtom {
  Complex position;
  double weight = 0;
};

// Finite list of weighted planar points; the desk-scale stand-in for a Radon
// measure.  `exclusion_radius` records the leaf scale of the generating
// raster, below which point evaluations of singular transforms are refused.
struct DiscreteMeasure {
  std::vector<WeightedAtom> atoms;
  double exclusion_radius = 0;

  double total() const;
  double ball_mass(Complex center, double radius) const;
  Rect bounding_box() const;  // degenerate when a single atom
  bool empty() const { return atoms.empty(); }
};

// Ball-growth safety divisor applied after the dyadic capping sweep.
inline constexpr double kGrowthSafety = 8.0;

// Frostman measure on an occupied raster: leaf-center atoms weighted side^beta,
// then a bottom-up sweep rescales every dyadic square over its cap side^beta,
// and finally all weights are divided by kGrowthSafety.  The pre-division
// total equals the dyadic content of the set.
DiscreteMeasure frostman(const RasterSet& set, double beta);

// Same sweep with the ladder gauge cap h_j(side).
DiscreteMeasure frostman_lower(const RasterSet& set, double beta, double eta,
                               int j);

struct GrowthSampling {
  std::vector<Complex> centers;    // sampled ball centers
  std::vector<double> radii;       // sampled radii, ascending
  // Default family: atom locations (subsampled beyond max_atom_centers) plus a
  // uniform grid over the dilated bounding box; dyadic radii from the
  // exclusion radius up to 1.
  static GrowthSampling defaults_for(const DiscreteMeasure& mu,
                                     int grid_n = 17,
                                     std::size_t max_atom_centers = 4096);
};

struct GrowthBall {
  Complex center;
  double radius = 0;
};

struct GrowthReport {
  double max_ratio = 0;  // sup of mu(B(a,r)) / r^beta over the sampled family
  GrowthBall worst;
  std::size_t samples = 0;
  bool passes() const { return max_ratio <= 1.0; }
};

GrowthReport growth_check(const DiscreteMeasure& mu, double beta,
                          const GrowthSampling& sampling);
GrowthReport growth_check(const DiscreteMeasure& mu, double beta);

}  // namespace lipcap
