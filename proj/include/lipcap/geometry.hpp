#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "lipcap/errors.hpp"

namespace lipcap {

using Complex = std::complex<double>;

// Closed axis-aligned box.
struct Rect {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  bool contains(Complex z) const {
    return z.real() >= x0 && z.real() <= x1 && z.imag() >= y0 && z.imag() <= y1;
  }
  bool contains(const Rect& o) const {
    return o.x0 >= x0 && o.x1 <= x1 && o.y0 >= y0 && o.y1 <= y1;
  }
  bool intersects(const Rect& o) const {
    return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1;
  }
  // Squared distance from z to the nearest point of the box.
  double min_sq_dist(Complex z) const {
    double dx = std::max({x0 - z.real(), 0.0, z.real() - x1});
    double dy = std::max({y0 - z.imag(), 0.0, z.imag() - y1});
    return dx * dx + dy * dy;
  }
  // Squared distance from z to the farthest point of the box.
  double max_sq_dist(Complex z) const {
    double dx = std::max(z.real() - x0, x1 - z.real());
    double dy = std::max(z.imag() - y0, y1 - z.imag());
    return dx * dx + dy * dy;
  }
  Rect dilated(double margin) const {
    return {x0 - margin, y0 - margin, x1 + margin, y1 + margin};
  }
};

// Closed square [m 2^-n, (m+1) 2^-n] x [r 2^-n, (r+1) 2^-n], side 2^-n <= 1.
struct DyadicSquare {
  std::int64_t m = 0;
  std::int64_t r = 0;
  int n = 0;

  double side() const { return std::ldexp(1.0, -n); }
  Rect rect() const {
    double s = side();
    return {static_cast<double>(m) * s, static_cast<double>(r) * s,
            static_cast<double>(m + 1) * s, static_cast<double>(r + 1) * s};
  }
  Complex center() const {
    double s = side();
    return {(static_cast<double>(m) + 0.5) * s, (static_cast<double>(r) + 0.5) * s};
  }
  // Quadrant q: bit 0 selects the right half, bit 1 the upper half.
  DyadicSquare child(int q) const {
    return {2 * m + (q & 1), 2 * r + ((q >> 1) & 1), n + 1};
  }
  // Square with the same centre and a scale-factor side (helper for dilations).
  Rect dilated_rect(double factor) const {
    double s = side();
    double half = 0.5 * factor * s;
    Complex c = center();
    return {c.real() - half, c.imag() - half, c.real() + half, c.imag() + half};
  }
  bool operator==(const DyadicSquare&) const = default;
};

// Region 2^-(index+1) <= |z - center| <= 2^-index, index >= 1.
struct Annulus {
  Complex center;
  int index = 1;

  double outer_radius() const { return std::ldexp(1.0, -index); }
  double inner_radius() const { return std::ldexp(1.0, -index - 1); }
  bool contains(Complex z) const {
    double d = std::abs(z - center);
    return d >= inner_radius() && d <= outer_radius();
  }
  // Closed-region intersection test against a closed box.
  bool intersects(const Rect& rect) const {
    double lo = rect.min_sq_dist(center);
    double hi = rect.max_sq_dist(center);
    double ri = inner_radius(), ro = outer_radius();
    return lo <= ro * ro && hi >= ri * ri;
  }
};

struct Segment {
  Complex a, b;
};

struct Disc {
  Complex center;
  double radius = 0;
};

// Union of dyadic cells (m, r) at a fixed level.
struct BitmapShape {
  int level = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> cells;
};

using Shape = std::variant<Segment, Disc, DyadicSquare, BitmapShape>;

Rect shape_bbox(const Shape& shape);
bool shape_intersects(const Shape& shape, const Rect& rect);
bool shape_contains(const Shape& shape, const Rect& rect);

bool segment_intersects_rect(Complex a, Complex b, const Rect& rect);

enum class DomainKind { Slit, RoadRunner };

// Disc domain minus a geometric sequence of obstacles accumulating at a
// boundary point: segments for Slit, closed discs for RoadRunner.  Obstacle
// n (n = 1, 2, ...) is centred at distance a0*q^n with radius c0*p^n.
struct ParametricDomain {
  DomainKind kind = DomainKind::Slit;
  double a0 = 1, q = 0.5, c0 = 1, p = 0.25;
  double enclosing_radius = 0;

  static ParametricDomain make(DomainKind kind, double a0, double q, double c0,
                               double p, std::optional<double> radius = std::nullopt);

  double center_offset(int n) const { return a0 * std::pow(q, n); }
  double obstacle_radius(int n) const { return c0 * std::pow(p, n); }
};

struct Scene {
  DyadicSquare root;  // default unit square
  std::vector<Shape> shapes;
  std::optional<ParametricDomain> parametric;
};

}  // namespace lipcap
