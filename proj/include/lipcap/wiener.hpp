#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lipcap/content.hpp"
#include "lipcap/measure.hpp"
#include "lipcap/raster.hpp"
#include "lipcap/transforms.hpp"

namespace lipcap {

enum class ContentSelector { Upper, Lower };

struct SeriesSpec {
  Complex b{0.0, 0.0};
  double s = -0.5;                 // smoothness, in (-1, 0)
  int k = 0;                       // derivation order; 0 = point evaluation
  ContentSelector content = ContentSelector::Upper;
  double eta = 0.5;                // ladder parameter for Lower
  int ladder_steps = 3;

  double beta() const { return s + 1.0; }
  void validate() const;
};

enum class Verdict { Converges, Diverges, Undetermined };

const char* verdict_name(Verdict v);

struct SeriesTerm {
  int n = 0;
  double value = 0;    // 2^((k+1)n) * content
  double content = 0;  // content of A_n \ U at the working resolution
};

struct SeriesReport {
  std::vector<SeriesTerm> terms;
  std::vector<double> partial_sums;
  Verdict verdict = Verdict::Undetermined;
  std::optional<double> exact_sum;
  std::string tail_model;
  double dual_norm_estimate = 0;
  std::vector<std::string> warnings;
  int truncation_index = 0;          // parametric obstacle truncation
  std::vector<int> continuum_hits;   // annuli where the crossing detector fired
  bool ladder_capped = false;
};

// Raster terms 2^((k+1)n) * content(annulus_clip(obstacles, A_n(b))).
SeriesReport series_terms(const Scene& scene, const SeriesSpec& spec, int n_max,
                          int depth);
SeriesReport series_terms(const ParametricDomain& domain,
                          const SeriesSpec& spec, int n_max, int depth);

// Exact geometric-ratio test: rho = p^((k+1)(s+1)) / q; converges iff rho < 1,
// with the exact sum c0^((k+1)(s+1))/a0 * rho/(1-rho) when it does.
SeriesReport classify_parametric(const ParametricDomain& domain,
                                 const SeriesSpec& spec);

// Dispatches to the parametric test when available; otherwise evaluates
// raster terms and upgrades to Diverges when the annulus-crossing detector
// certifies the continuum lower bound 2^(-(n+1)beta) on the tail window.
// Raster data alone never yields Converges (tails stay unresolved).
SeriesReport classify(const Scene& scene, const SeriesSpec& spec, int n_max,
                      int depth);
SeriesReport classify(const ParametricDomain& domain, const SeriesSpec& spec,
                      int n_max, int depth);

// True when the occupied leaves of `clip` contain a 4-connected chain joining
// the inner and outer circles of the annulus.
bool annulus_crossing(const RasterSet& clip, const Annulus& ann);

enum class LambdaRule { Normalized, Unit };

struct WitnessTerm {
  int n = 0;
  double lambda = 0;
  double measure_total = 0;       // ||mu_n||
  double content_estimate = 0;    // dyadic-content proxy for M(E_n)
  double re_contribution = 0;     // Re of the oriented Cauchy value at b
  double sector_lower_bound = 0;  // lambda * 2^n * ||mu_n|| / (sqrt(2) pi)
};

struct DivergenceWitness {
  int N = 0;
  std::vector<WitnessTerm> terms;
  Complex value_at_zero;      // oriented so the real part is positive
  double norm_bound_grid = 0; // sup over the grid of t^(2-beta) |P_t * g_N|
  DiscreteMeasure combined;   // g_N = sum lambda_n mu_n
};

// The divergence side of the main criterion at desk scale: per-annulus
// Frostman measures on the obstacle pieces, normalized so each term's series
// weight is at most 1, with the evaluation blowing up while the Poisson grid
// norm stays bounded.
DivergenceWitness divergence_witness(const ParametricDomain& domain,
                                     const SeriesSpec& spec, int N, int depth,
                                     LambdaRule rule = LambdaRule::Normalized);

// Smooth radial partition subordinate to the annuli A_n(b): psi_n = 1 on A_n,
// zero off A_{n-1} u A_n u A_{n+1}, phi_n = psi_n / sum_m psi_m.
class AnnularPartition {
 public:
  AnnularPartition(Complex b, int n_max);

  Complex center() const { return b_; }
  int n_max() const { return n_max_; }

  double psi(int n, Complex z) const;
  double phi(int n, Complex z) const;
  // Sum over the returned family 1..n_max at z.
  double family_sum(Complex z) const;

  GridFunction phi_grid(int n) const;
  // Samples of phi_n(z) / (z - b) as (re, im).
  std::pair<GridFunction, GridFunction> phi_over_z_grid(int n) const;

 private:
  double bump(double x) const;
  Complex b_;
  int n_max_;
};

AnnularPartition annular_test_functions(Complex b, int n_max);

}  // namespace lipcap
