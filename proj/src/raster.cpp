#include "lipcap/raster.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace lipcap {

int depth_cap() {
  if (const char* env = std::getenv("LIPCAP_DEPTH_CAP")) {
    int v = std::atoi(env);
    if (v < 1) v = 1;
    if (v > 16) v = 16;
    return v;
  }
  return 14;
}

std::uint64_t morton_encode(std::uint32_t ix, std::uint32_t iy) {
  auto spread = [](std::uint64_t v) {
    v &= 0xffffffffull;
    v = (v | (v << 16)) & 0x0000ffff0000ffffull;
    v = (v | (v << 8)) & 0x00ff00ff00ff00ffull;
    v = (v | (v << 4)) & 0x0f0f0f0f0f0f0f0full;
    v = (v | (v << 2)) & 0x3333333333333333ull;
    v = (v | (v << 1)) & 0x5555555555555555ull;
    return v;
  };
  return spread(ix) | (spread(iy) << 1);
}

void morton_decode(std::uint64_t code, std::uint32_t& ix, std::uint32_t& iy) {
  auto compact = [](std::uint64_t v) {
    v &= 0x5555555555555555ull;
    v = (v | (v >> 1)) & 0x3333333333333333ull;
    v = (v | (v >> 2)) & 0x0f0f0f0f0f0f0f0full;
    v = (v | (v >> 4)) & 0x00ff00ff00ff00ffull;
    v = (v | (v >> 8)) & 0x0000ffff0000ffffull;
    v = (v | (v >> 16)) & 0x00000000ffffffffull;
    return static_cast<std::uint32_t>(v);
  };
  ix = compact(code);
  iy = compact(code >> 1);
}

Rect RasterSet::leaf_rect(std::uint64_t code) const {
  std::uint32_t ix, iy;
  morton_decode(code, ix, iy);
  double h = leaf_side();
  Rect r = root.rect();
  return {r.x0 + ix * h, r.y0 + iy * h, r.x0 + (ix + 1) * h, r.y0 + (iy + 1) * h};
}

Complex RasterSet::leaf_center(std::uint64_t code) const {
  Rect r = leaf_rect(code);
  return {0.5 * (r.x0 + r.x1), 0.5 * (r.y0 + r.y1)};
}

bool RasterSet::leafwise_subset_of(const RasterSet& other) const {
  if (root != other.root || depth != other.depth) return false;
  return std::includes(other.leaves.begin(), other.leaves.end(),
                       leaves.begin(), leaves.end());
}

namespace {

void check_depth(int depth) {
  if (depth < 1 || depth > depth_cap()) {
    fail(ErrorCode::DepthTooLarge,
         "depth " + std::to_string(depth) + " outside [1, " +
             std::to_string(depth_cap()) + "]");
  }
}

// Recursive descent over the quadtree in Morton order; emits occupied leaves.
void descend(const Shape& shape, const Rect& square, std::uint64_t code,
             int level, int depth, RasterMode mode,
             std::vector<std::uint64_t>& out) {
  if (mode == RasterMode::Inner && shape_contains(shape, square)) {
    // Whole subtree occupied.
    std::uint64_t width = 1ull << (2 * (depth - level));
    std::uint64_t base = code << (2 * (depth - level));
    for (std::uint64_t k = 0; k < width; ++k) out.push_back(base + k);
    return;
  }
  if (!shape_intersects(shape, square)) return;
  if (level == depth) {
    if (mode == RasterMode::Outer) out.push_back(code);
    return;
  }
  double mx = 0.5 * (square.x0 + square.x1);
  double my = 0.5 * (square.y0 + square.y1);
  const Rect quads[4] = {
      {square.x0, square.y0, mx, my},
      {mx, square.y0, square.x1, my},
      {square.x0, my, mx, square.y1},
      {mx, my, square.x1, square.y1},
  };
  for (int q = 0; q < 4; ++q) {
    descend(shape, quads[q], (code << 2) | static_cast<std::uint64_t>(q),
            level + 1, depth, mode, out);
  }
}

}  // namespace

RasterSet rasterize(const Scene& scene, int depth, RasterMode mode) {
  check_depth(depth);
  Rect root_rect = scene.root.rect();
  for (const Shape& shape : scene.shapes) {
    if (!root_rect.contains(shape_bbox(shape))) {
      fail(ErrorCode::ShapeOutsideRoot, "shape extends outside the root square");
    }
  }
  RasterSet set{scene.root, depth, {}};
  std::vector<std::uint64_t> acc;
  for (const Shape& shape : scene.shapes) {
    std::vector<std::uint64_t> one;
    descend(shape, root_rect, 0, 0, depth, mode, one);
    acc.insert(acc.end(), one.begin(), one.end());
  }
  std::sort(acc.begin(), acc.end());
  acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
  set.leaves = std::move(acc);
  return set;
}

RasterSet annulus_clip(const RasterSet& set, const Annulus& ann) {
  RasterSet out{set.root, set.depth, {}};
  out.leaves.reserve(set.leaves.size());
  for (std::uint64_t code : set.leaves) {
    if (ann.intersects(set.leaf_rect(code))) out.leaves.push_back(code);
  }
  return out;
}

RasterSet coarsen(const RasterSet& set, int new_depth) {
  if (new_depth < 1 || new_depth > set.depth) {
    fail(ErrorCode::BadInput, "coarsen target depth out of range");
  }
  RasterSet out{set.root, new_depth, {}};
  int shift = 2 * (set.depth - new_depth);
  out.leaves.reserve(set.leaves.size());
  for (std::uint64_t code : set.leaves) out.leaves.push_back(code >> shift);
  out.leaves.erase(std::unique(out.leaves.begin(), out.leaves.end()),
                   out.leaves.end());
  return out;
}

Scene parametric_obstacle_scene(const ParametricDomain& domain,
                                Complex accumulation_point, double ball_radius,
                                double leaf_side, int& truncation) {
  Scene scene;
  scene.root = DyadicSquare{0, 0, 0};
  truncation = 0;
  for (int n = 1;; ++n) {
    double a = domain.center_offset(n);
    double r = domain.obstacle_radius(n);
    if (r < leaf_side) break;
    truncation = n;
    if (a + r > ball_radius) continue;  // outside the requested ball
    Complex c = accumulation_point + Complex{a, 0};
    if (domain.kind == DomainKind::Slit) {
      scene.shapes.push_back(Segment{c - Complex{r, 0}, c + Complex{r, 0}});
    } else {
      scene.shapes.push_back(Disc{c, r});
    }
  }
  return scene;
}

ComplementRaster complement_in_ball(const ParametricDomain& domain,
                                    Complex accumulation_point,
                                    double ball_radius, int depth,
                                    RasterMode mode) {
  check_depth(depth);
  double leaf = std::ldexp(1.0, -depth);
  int truncation = 0;
  Scene scene = parametric_obstacle_scene(domain, accumulation_point,
                                          ball_radius, leaf, truncation);
  ComplementRaster result{rasterize(scene, depth, mode), truncation};
  return result;
}

ComplementRaster complement_in_ball(const Scene& scene, Complex ball_center,
                                    double ball_radius, int depth,
                                    RasterMode mode) {
  RasterSet raster = rasterize(scene, depth, mode);
  RasterSet out{raster.root, raster.depth, {}};
  double rr = ball_radius * ball_radius;
  for (std::uint64_t code : raster.leaves) {
    if (raster.leaf_rect(code).min_sq_dist(ball_center) <= rr) {
      out.leaves.push_back(code);
    }
  }
  return {std::move(out), 0};
}

}  // namespace lipcap
