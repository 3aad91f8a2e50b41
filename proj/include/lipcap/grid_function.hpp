#pragma once

#include <vector>

#include "lipcap/geometry.hpp"

namespace lipcap {

// Uniformly sampled real function on a square grid.  Node (col, row) sits at
// origin + (col*spacing, row*spacing); values are row-major.
struct GridFunction {
  Complex origin;
  double spacing = 1;
  int rows = 0, cols = 0;
  std::vector<double> values;

  double& at(int row, int col) { return values[static_cast<std::size_t>(row) * cols + col]; }
  double at(int row, int col) const { return values[static_cast<std::size_t>(row) * cols + col]; }
  Complex node(int row, int col) const {
    return origin + Complex{col * spacing, row * spacing};
  }
  Rect bbox() const {
    return {origin.real(), origin.imag(), origin.real() + (cols - 1) * spacing,
            origin.imag() + (rows - 1) * spacing};
  }
  bool contains(Complex z) const { return bbox().contains(z); }

  // Bilinear interpolation; exact on nodes, zero outside the grid box.
  double eval(Complex z) const;

  // Diagonal of the bounding box of the nonzero nodes (0 if identically 0).
  double support_diameter() const;
  Rect support_bbox() const;

  GridFunction scaled(double factor) const;  // multiplies values
};

// Canonical C^inf step built from e^{-1/u}: 0 on (-inf,0], 1 on [1,inf).
double smooth_step(double u);

// Nonincreasing C^inf profile with rho = 1 on [0, 5/8] and rho = 0 on
// [3/4, inf); the transition uses the canonical smooth step.
struct SmoothProfile {
  double plateau = 0.625;
  double cutoff = 0.75;
  double operator()(double r) const;
};

struct NkValue {
  int k = 0;
  double value = 0;
  double spacing = 0;  // grid order used by the finite differences
};

// d(phi)^k * max over |alpha| = k of sup |d^alpha phi|, by central finite
// differences.  Requires spacing <= support_diameter/64 and rejects samples
// whose difference quotients do not stabilize under coarsening.
NkValue nk_seminorm(const GridFunction& phi, int k);

// Same seminorm for a complex-valued sample given as (re, im) on one grid.
NkValue nk_seminorm_complex(const GridFunction& re, const GridFunction& im,
                            int k);

// Every stride-th node, keeping the origin.
GridFunction subsample(const GridFunction& f, int stride);

// phi_n(x) = rho(n |x - b|): equal to 1 near b, support diameter <= 3/(2n).
GridFunction standard_pincher(Complex b, int n, const SmoothProfile& profile = {});

// Window of the level-m tessellation: squares (m0 + i, r0 + j) for
// 0 <= i < m_count, 0 <= j < r_count.
struct TessWindow {
  int level = 0;
  std::int64_t m0 = 0, r0 = 0;
  int m_count = 1, r_count = 1;
};

struct TessPartition {
  std::vector<DyadicSquare> squares;
  std::vector<GridFunction> psi;  // shared grid, one per square
  GridFunction tau;               // normalizer samples on the same grid
};

// Evaluates the tessellation bump theta_S and the normalized psi_S = theta_S/tau
// for the level-m tessellation; tau is the full-plane sum, in [1, 4].
double tess_theta(const DyadicSquare& square, Complex z,
                  const SmoothProfile& profile = {});
double tess_tau(int level, Complex z, const SmoothProfile& profile = {});
double tess_psi(const DyadicSquare& square, Complex z,
                const SmoothProfile& profile = {});

// Materializes psi_S for every square of the window on one shared grid with
// spacing side/32.
TessPartition tess_partition(const TessWindow& window,
                             const SmoothProfile& profile = {});

}  // namespace lipcap
