#pragma once

#include <cstdint>
#include <vector>

#include "lipcap/geometry.hpp"

namespace lipcap {

// Maximum rasterization depth; LIPCAP_DEPTH_CAP overrides, clamped to [1,16].
int depth_cap();

// Raster frame anchor for parametric domains: the accumulation point sits at
// the center of the unit root so every annulus of interest fits inside.
inline constexpr Complex kParametricAnchor{0.5, 0.5};

// Quadtree occupancy of a compact set inside a root dyadic square, stored as
// the sorted Morton codes of the occupied leaves at `depth` levels below the
// root.  The represented set is the union of the closed occupied leaf squares.
struct RasterSet {
  DyadicSquare root;
  int depth = 1;
  std::vector<std::uint64_t> leaves;  // sorted, unique

  bool empty() const { return leaves.empty(); }
  std::size_t occupied_count() const { return leaves.size(); }
  double leaf_side() const { return std::ldexp(root.side(), -depth); }
  Rect leaf_rect(std::uint64_t code) const;
  Complex leaf_center(std::uint64_t code) const;
  bool leafwise_subset_of(const RasterSet& other) const;
};

std::uint64_t morton_encode(std::uint32_t ix, std::uint32_t iy);
void morton_decode(std::uint64_t code, std::uint32_t& ix, std::uint32_t& iy);

// Outer: a leaf is occupied iff it meets a shape (conservative cover).
// Inner: a leaf is occupied only if some single shape contains it.
enum class RasterMode { Outer, Inner };

RasterSet rasterize(const Scene& scene, int depth,
                    RasterMode mode = RasterMode::Outer);

// Leaf occupied iff occupied in `set` and the leaf square meets the closed
// annulus.
RasterSet annulus_clip(const RasterSet& set, const Annulus& ann);

// Occupancy of the same scene at a coarser depth.
RasterSet coarsen(const RasterSet& set, int new_depth);

struct ComplementRaster {
  RasterSet raster;
  // Last obstacle index included before radii fell below the leaf size;
  // 0 when no obstacle was representable.
  int truncation_index = 0;
};

// Materializes the obstacle union of a parametric domain around an
// accumulation point, truncating the sequence at leaf scale.
ComplementRaster complement_in_ball(const ParametricDomain& domain,
                                    Complex accumulation_point,
                                    double ball_radius, int depth,
                                    RasterMode mode = RasterMode::Outer);

// Scene obstacles clipped to the closed ball.
ComplementRaster complement_in_ball(const Scene& scene, Complex ball_center,
                                    double ball_radius, int depth,
                                    RasterMode mode = RasterMode::Outer);

// Obstacle shapes of a parametric domain down to leaf scale, as a scene.
// Returns the truncation index through `truncation`.
Scene parametric_obstacle_scene(const ParametricDomain& domain,
                                Complex accumulation_point, double ball_radius,
                                double leaf_side, int& truncation);

}  // namespace lipcap
