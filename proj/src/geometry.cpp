#include "lipcap/geometry.hpp"

#include <algorithm>
#include <string>

namespace lipcap {

namespace {

Rect segment_bbox(const Segment& s) {
  return {std::min(s.a.real(), s.b.real()), std::min(s.a.imag(), s.b.imag()),
          std::max(s.a.real(), s.b.real()), std::max(s.a.imag(), s.b.imag())};
}

}  // namespace

bool segment_intersects_rect(Complex a, Complex b, const Rect& rect) {
  // Liang-Barsky clipping against the closed box; ties count as hits.
  double t0 = 0.0, t1 = 1.0;
  double dx = b.real() - a.real();
  double dy = b.imag() - a.imag();
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {a.real() - rect.x0, rect.x1 - a.real(),
                       a.imag() - rect.y0, rect.y1 - a.imag()};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return false;
    } else {
      double t = q[i] / p[i];
      if (p[i] < 0.0) {
        if (t > t0) t0 = t;
      } else {
        if (t < t1) t1 = t;
      }
    }
  }
  return t0 <= t1;
}

Rect shape_bbox(const Shape& shape) {
  return std::visit(
      [](const auto& s) -> Rect {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Segment>) {
          return segment_bbox(s);
        } else if constexpr (std::is_same_v<T, Disc>) {
          return {s.center.real() - s.radius, s.center.imag() - s.radius,
                  s.center.real() + s.radius, s.center.imag() + s.radius};
        } else if constexpr (std::is_same_v<T, DyadicSquare>) {
          return s.rect();
        } else {
          Rect box{0, 0, 0, 0};
          bool first = true;
          for (const auto& [m, r] : s.cells) {
            Rect cell = DyadicSquare{m, r, s.level}.rect();
            if (first) {
              box = cell;
              first = false;
            } else {
              box.x0 = std::min(box.x0, cell.x0);
              box.y0 = std::min(box.y0, cell.y0);
              box.x1 = std::max(box.x1, cell.x1);
              box.y1 = std::max(box.y1, cell.y1);
            }
          }
          return box;
        }
      },
      shape);
}

bool shape_intersects(const Shape& shape, const Rect& rect) {
  return std::visit(
      [&rect](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Segment>) {
          return segment_intersects_rect(s.a, s.b, rect);
        } else if constexpr (std::is_same_v<T, Disc>) {
          return rect.min_sq_dist(s.center) <= s.radius * s.radius;
        } else if constexpr (std::is_same_v<T, DyadicSquare>) {
          return s.rect().intersects(rect);
        } else {
          for (const auto& [m, r] : s.cells) {
            if (DyadicSquare{m, r, s.level}.rect().intersects(rect)) return true;
          }
          return false;
        }
      },
      shape);
}

bool shape_contains(const Shape& shape, const Rect& rect) {
  return std::visit(
      [&rect](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Segment>) {
          return false;  // segments have empty interior
        } else if constexpr (std::is_same_v<T, Disc>) {
          return rect.max_sq_dist(s.center) <= s.radius * s.radius;
        } else if constexpr (std::is_same_v<T, DyadicSquare>) {
          return s.rect().contains(rect);
        } else {
          for (const auto& [m, r] : s.cells) {
            if (DyadicSquare{m, r, s.level}.rect().contains(rect)) return true;
          }
          return false;
        }
      },
      shape);
}

ParametricDomain ParametricDomain::make(DomainKind kind, double a0, double q,
                                        double c0, double p,
                                        std::optional<double> radius) {
  if (!(a0 > 0) || !(c0 > 0) || !(q > 0) || !(q < 1) || !(p > 0) || !(p < 1)) {
    fail(ErrorCode::InvalidDomain,
         "parametric domain requires a0,c0 > 0 and p,q in (0,1)");
  }
  if (p > q) {
    fail(ErrorCode::InvalidDomain,
         "parametric domain requires p <= q (radii must shrink at least as fast "
         "as centers)");
  }
  // Sufficient disjointness condition c0 p^n (1+p) < a0 q^n (1-q) for all
  // n >= 1: with p <= q the ratio is nonincreasing, so checking the first
  // obstacle settles the whole sequence.
  if (!(c0 * p * (1 + p) < a0 * q * (1 - q))) {
    fail(ErrorCode::InvalidDomain,
         "obstacles are not disjoint: need c0*p*(1+p) < a0*q*(1-q)");
  }
  ParametricDomain d{kind, a0, q, c0, p, 0};
  for (int n = 1; n <= 64; ++n) {
    if (!(d.center_offset(n + 1) + d.obstacle_radius(n + 1) <
          d.center_offset(n) - d.obstacle_radius(n))) {
      fail(ErrorCode::InvalidDomain,
           "obstacle " + std::to_string(n + 1) + " overlaps obstacle " +
               std::to_string(n));
    }
  }
  d.enclosing_radius =
      radius.value_or(d.center_offset(1) + d.obstacle_radius(1));
  if (d.enclosing_radius < d.center_offset(1) + d.obstacle_radius(1)) {
    fail(ErrorCode::InvalidDomain, "enclosing radius excludes obstacle 1");
  }
  return d;
}

}  // namespace lipcap
