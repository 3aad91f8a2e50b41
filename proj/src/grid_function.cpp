#include "lipcap/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lipcap {

double GridFunction::eval(Complex z) const {
  if (rows < 1 || cols < 1) return 0.0;
  double fx = (z.real() - origin.real()) / spacing;
  double fy = (z.imag() - origin.imag()) / spacing;
  if (fx < 0 || fy < 0 || fx > cols - 1 || fy > rows - 1) return 0.0;
  int c0 = std::min(static_cast<int>(fx), cols - 2 >= 0 ? cols - 2 : 0);
  int r0 = std::min(static_cast<int>(fy), rows - 2 >= 0 ? rows - 2 : 0);
  double tx = fx - c0;
  double ty = fy - r0;
  if (cols == 1) { c0 = 0; tx = 0; }
  if (rows == 1) { r0 = 0; ty = 0; }
  double v00 = at(r0, c0);
  double v01 = cols > 1 ? at(r0, c0 + 1) : v00;
  double v10 = rows > 1 ? at(r0 + 1, c0) : v00;
  double v11 = (rows > 1 && cols > 1) ? at(r0 + 1, c0 + 1) : v00;
  return (1 - ty) * ((1 - tx) * v00 + tx * v01) + ty * ((1 - tx) * v10 + tx * v11);
}

Rect GridFunction::support_bbox() const {
  int rmin = rows, rmax = -1, cmin = cols, cmax = -1;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (at(r, c) != 0.0) {
        rmin = std::min(rmin, r);
        rmax = std::max(rmax, r);
        cmin = std::min(cmin, c);
        cmax = std::max(cmax, c);
      }
    }
  }
  if (rmax < 0) return {0, 0, 0, 0};
  Complex lo = node(rmin, cmin), hi = node(rmax, cmax);
  return {lo.real(), lo.imag(), hi.real(), hi.imag()};
}

double GridFunction::support_diameter() const {
  Rect box = support_bbox();
  return std::hypot(box.width(), box.height());
}

GridFunction GridFunction::scaled(double factor) const {
  GridFunction out = *this;
  for (double& v : out.values) v *= factor;
  return out;
}

double smooth_step(double u) {
  if (u <= 0) return 0.0;
  if (u >= 1) return 1.0;
  double g0 = std::exp(-1.0 / u);
  double g1 = std::exp(-1.0 / (1.0 - u));
  return g0 / (g0 + g1);
}

double SmoothProfile::operator()(double r) const {
  if (r <= plateau) return 1.0;
  if (r >= cutoff) return 0.0;
  return 1.0 - smooth_step((r - plateau) / (cutoff - plateau));
}

namespace {

// One central difference along an axis; shrinks the grid by one node per side.
GridFunction central_difference(const GridFunction& f, bool along_x) {
  GridFunction out;
  out.spacing = f.spacing;
  if (along_x) {
    out.origin = f.origin + Complex{f.spacing, 0};
    out.rows = f.rows;
    out.cols = f.cols - 2;
  } else {
    out.origin = f.origin + Complex{0, f.spacing};
    out.rows = f.rows - 2;
    out.cols = f.cols;
  }
  if (out.rows < 1 || out.cols < 1) {
    fail(ErrorCode::GridTooCoarse, "grid too small for finite differences");
  }
  out.values.resize(static_cast<std::size_t>(out.rows) * out.cols);
  double inv = 0.5 / f.spacing;
  for (int r = 0; r < out.rows; ++r) {
    for (int c = 0; c < out.cols; ++c) {
      double hi = along_x ? f.at(r, c + 2) : f.at(r + 2, c);
      double lo = f.at(r, c);
      out.at(r, c) = (hi - lo) * inv;
    }
  }
  return out;
}

double sup_abs(const GridFunction& f) {
  double m = 0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

// Largest change between adjacent nodes, relative to the sample range; close
// to 1 exactly when a transition is squeezed into a single cell.
double max_cell_jump(const GridFunction& f) {
  double sup = 0;
  for (double v : f.values) sup = std::max(sup, std::abs(v));
  if (sup == 0) return 0;
  double jump = 0;
  for (int r = 0; r < f.rows; ++r) {
    for (int c = 0; c < f.cols; ++c) {
      if (c + 1 < f.cols) jump = std::max(jump, std::abs(f.at(r, c + 1) - f.at(r, c)));
      if (r + 1 < f.rows) jump = std::max(jump, std::abs(f.at(r + 1, c) - f.at(r, c)));
    }
  }
  return jump / sup;
}

// Max over the k+1 multi-indices of the sup of the iterated central
// difference; pair version combines two samples as a complex modulus.
double max_derivative_sup(const GridFunction& re, const GridFunction* im, int k) {
  double worst = 0;
  for (int a = 0; a <= k; ++a) {
    GridFunction dre = re;
    GridFunction dim;
    if (im) dim = *im;
    for (int i = 0; i < a; ++i) {
      dre = central_difference(dre, true);
      if (im) dim = central_difference(dim, true);
    }
    for (int i = 0; i < k - a; ++i) {
      dre = central_difference(dre, false);
      if (im) dim = central_difference(dim, false);
    }
    if (!im) {
      worst = std::max(worst, sup_abs(dre));
    } else {
      for (std::size_t i = 0; i < dre.values.size(); ++i) {
        worst = std::max(worst, std::hypot(dre.values[i], dim.values[i]));
      }
    }
  }
  return worst;
}

NkValue nk_impl(const GridFunction& re, const GridFunction* im, int k) {
  if (k < 0 || k > 4) {
    fail(ErrorCode::GridTooCoarse,
         "finite differences support k in [0,4], got k=" + std::to_string(k));
  }
  double d = re.support_diameter();
  if (im) {
    Rect a = re.support_bbox(), b = im->support_bbox();
    Rect u{std::min(a.x0, b.x0), std::min(a.y0, b.y0), std::max(a.x1, b.x1),
           std::max(a.y1, b.y1)};
    d = std::hypot(u.width(), u.height());
  }
  if (d == 0) return {k, 0.0, re.spacing};
  if (k > 0 && re.spacing > d / 64) {
    fail(ErrorCode::GridTooCoarse, "need spacing <= support_diameter/64");
  }
  if (k > 0) {
    // A sample that crosses most of its range between adjacent nodes is an
    // unresolved transition; its difference quotients estimate a jump, not a
    // derivative.
    double jump = std::max(max_cell_jump(re), im ? max_cell_jump(*im) : 0.0);
    if (jump > 0.7) {
      fail(ErrorCode::GridTooCoarse,
           "adjacent samples jump by most of the range; refine the grid");
    }
  }
  double sup = max_derivative_sup(re, im, k);
  return {k, std::pow(d, k) * sup, re.spacing};
}

}  // namespace

NkValue nk_seminorm(const GridFunction& phi, int k) { return nk_impl(phi, nullptr, k); }

GridFunction subsample(const GridFunction& f, int stride) {
  if (stride <= 1) return f;
  GridFunction out;
  out.origin = f.origin;
  out.spacing = f.spacing * stride;
  out.rows = (f.rows + stride - 1) / stride;
  out.cols = (f.cols + stride - 1) / stride;
  out.values.resize(static_cast<std::size_t>(out.rows) * out.cols);
  for (int r = 0; r < out.rows; ++r) {
    for (int c = 0; c < out.cols; ++c) out.at(r, c) = f.at(r * stride, c * stride);
  }
  return out;
}

NkValue nk_seminorm_complex(const GridFunction& re, const GridFunction& im,
                            int k) {
  return nk_impl(re, &im, k);
}

GridFunction standard_pincher(Complex b, int n, const SmoothProfile& profile) {
  if (n < 1) fail(ErrorCode::BadInput, "pincher index must be >= 1");
  double radius = profile.cutoff / n;
  double span = 2 * radius;
  GridFunction f;
  f.spacing = span / 512;
  f.origin = b - Complex{radius + f.spacing, radius + f.spacing};
  f.rows = f.cols = 515;
  f.values.resize(static_cast<std::size_t>(f.rows) * f.cols);
  for (int r = 0; r < f.rows; ++r) {
    for (int c = 0; c < f.cols; ++c) {
      f.at(r, c) = profile(n * std::abs(f.node(r, c) - b));
    }
  }
  return f;
}

double tess_theta(const DyadicSquare& square, Complex z,
                  const SmoothProfile& profile) {
  Complex c = square.center();
  double s = square.side();
  return profile(std::abs(z.real() - c.real()) / s) *
         profile(std::abs(z.imag() - c.imag()) / s);
}

namespace {

// 1-D normalizer: sum of rho(|x/s - i - 1/2|) over integers i; at most two
// terms are nonzero and the sum lies in [1, 2].
double tess_tau_1d(double x, double s, const SmoothProfile& profile) {
  double u = x / s;
  double base = std::floor(u - 0.5);
  double sum = 0;
  for (int i = -1; i <= 2; ++i) {
    sum += profile(std::abs(u - (base + i) - 0.5));
  }
  return sum;
}

}  // namespace

double tess_tau(int level, Complex z, const SmoothProfile& profile) {
  double s = std::ldexp(1.0, -level);
  return tess_tau_1d(z.real(), s, profile) * tess_tau_1d(z.imag(), s, profile);
}

double tess_psi(const DyadicSquare& square, Complex z,
                const SmoothProfile& profile) {
  double theta = tess_theta(square, z, profile);
  if (theta == 0.0) return 0.0;
  return theta / tess_tau(square.n, z, profile);
}

TessPartition tess_partition(const TessWindow& window,
                             const SmoothProfile& profile) {
  if (window.m_count < 1 || window.r_count < 1) {
    fail(ErrorCode::BadInput, "tessellation window must be nonempty");
  }
  TessPartition part;
  double s = std::ldexp(1.0, -window.level);
  double spacing = s / 32;
  // The grid covers the window plus the (3/2)S support margin of the border
  // squares.
  double margin = 0.75 * s;
  double x0 = window.m0 * s - margin;
  double y0 = window.r0 * s - margin;
  int cols = window.m_count * 32 + 48 + 1;
  int rows = window.r_count * 32 + 48 + 1;

  GridFunction tau;
  tau.origin = {x0, y0};
  tau.spacing = spacing;
  tau.rows = rows;
  tau.cols = cols;
  tau.values.resize(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      tau.at(r, c) = tess_tau(window.level, tau.node(r, c), profile);
    }
  }
  part.tau = tau;

  for (int j = 0; j < window.r_count; ++j) {
    for (int i = 0; i < window.m_count; ++i) {
      DyadicSquare sq{window.m0 + i, window.r0 + j, window.level};
      GridFunction psi;
      psi.origin = tau.origin;
      psi.spacing = spacing;
      psi.rows = rows;
      psi.cols = cols;
      psi.values.resize(static_cast<std::size_t>(rows) * cols);
      for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
          double theta = tess_theta(sq, psi.node(r, c), profile);
          psi.at(r, c) = theta == 0.0 ? 0.0 : theta / tau.at(r, c);
        }
      }
      part.squares.push_back(sq);
      part.psi.push_back(std::move(psi));
    }
  }
  return part;
}

}  // namespace lipcap
