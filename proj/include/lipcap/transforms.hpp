#pragma once

#include "lipcap/grid_function.hpp"
#include "lipcap/measure.hpp"

namespace lipcap {

// Half-space Poisson kernel t / (pi (t^2 + |z|^2)^(3/2)).
double poisson_kernel(Complex z, double t);

// Exact convolution P_t * mu for an atomic measure.
double poisson_transform(const DiscreteMeasure& mu, Complex z, double t);

struct PoissonGridSpec {
  Rect zbox;
  int nx = 64, ny = 64;
  double t_min = 0, t_max = 4;  // t_min defaults to 2^-16 in validate()
  int nt = 48;                  // log-spaced
  bool include_atoms = true;    // append atom locations to the z samples

  static PoissonGridSpec for_measure(const DiscreteMeasure& mu);
  void validate() const;
};

struct TsNormEstimate {
  double s = 0;
  double value = 0;          // sup over the grid of t^-s |P_t * mu|
  Complex attaining_z;
  double attaining_t = 0;
  double little_o_slope = 0;  // slope of log2(t^-s sup_z |F|) vs log2 t at small t
  bool tmin_limited = false;  // sup attained at the smallest t while growing
};

// Grid supremum of t^-s |P_t * mu|; a lower bound for the true norm.
TsNormEstimate ts_norm_estimate(const DiscreteMeasure& mu, double s,
                                const PoissonGridSpec& grid);
TsNormEstimate ts_norm_estimate(const DiscreteMeasure& mu, double s);

// Sum of w_i / (pi (z - p_i)); refuses z within the exclusion radius of an
// atom.
Complex cauchy_transform(const DiscreteMeasure& mu, Complex z);

// Pairing evaluation of the transform at b against a test function chi that
// equals 1/(z-b) near the support, sampled as (re, im) grids.  The sign is
// fixed so the pairing agrees with cauchy_transform(mu, b); this is the
// normative orientation for the toolkit.
Complex cauchy_eval_pairing(const DiscreteMeasure& mu, Complex b,
                            const GridFunction& chi_re,
                            const GridFunction& chi_im);

// Samples 1/(z-b) on a grid aligned with the atoms of mu (nodes at the atom
// lattice), suitable for cauchy_eval_pairing.
std::pair<GridFunction, GridFunction> sample_cauchy_chi(
    const DiscreteMeasure& mu, Complex b);

// Atom reweighting by phi: the d-bar derivative of the localized transform.
DiscreteMeasure vitushkin_localize(const DiscreteMeasure& mu,
                                   const GridFunction& phi);

}  // namespace lipcap
