#include "lipcap/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace lipcap {

namespace {
constexpr double kPi = std::numbers::pi;
}

double poisson_kernel(Complex z, double t) {
  if (!(t > 0)) fail(ErrorCode::NonpositiveT, "Poisson kernel needs t > 0");
  double d = t * t + std::norm(z);
  return t / (kPi * d * std::sqrt(d));
}

double poisson_transform(const DiscreteMeasure& mu, Complex z, double t) {
  if (!(t > 0)) fail(ErrorCode::NonpositiveT, "Poisson transform needs t > 0");
  double sum = 0;
  for (const auto& a : mu.atoms) {
    double d = t * t + std::norm(z - a.position);
    sum += a.weight * t / (d * std::sqrt(d));
  }
  return sum / kPi;
}

PoissonGridSpec PoissonGridSpec::for_measure(const DiscreteMeasure& mu) {
  PoissonGridSpec spec;
  spec.t_min = std::ldexp(1.0, -16);
  Rect box = mu.bounding_box();
  double cx = 0.5 * (box.x0 + box.x1);
  double cy = 0.5 * (box.y0 + box.y1);
  double half = 2.0 * std::max(box.width(), box.height());  // x4 dilation
  if (half == 0) half = 1.0;
  spec.zbox = {cx - half, cy - half, cx + half, cy + half};
  return spec;
}

void PoissonGridSpec::validate() const {
  if (!(t_min > 0) || !(t_max > t_min) || nt < 2 || nx < 1 || ny < 1 ||
      zbox.x1 < zbox.x0 || zbox.y1 < zbox.y0) {
    fail(ErrorCode::GridInvalid, "invalid Poisson grid specification");
  }
}

TsNormEstimate ts_norm_estimate(const DiscreteMeasure& mu, double s,
                                const PoissonGridSpec& grid_in) {
  if (!(s < 0)) {
    fail(ErrorCode::GridInvalid,
         "atomic measures are handled for s < 0 only (no finite norm otherwise)");
  }
  PoissonGridSpec grid = grid_in;
  if (grid.t_min == 0) grid.t_min = std::ldexp(1.0, -16);
  grid.validate();

  std::vector<Complex> zs;
  zs.reserve(static_cast<std::size_t>(grid.nx) * grid.ny + mu.atoms.size());
  for (int i = 0; i < grid.nx; ++i) {
    double tx = grid.nx == 1 ? 0.5 : static_cast<double>(i) / (grid.nx - 1);
    for (int j = 0; j < grid.ny; ++j) {
      double ty = grid.ny == 1 ? 0.5 : static_cast<double>(j) / (grid.ny - 1);
      zs.push_back({grid.zbox.x0 + tx * grid.zbox.width(),
                    grid.zbox.y0 + ty * grid.zbox.height()});
    }
  }
  if (grid.include_atoms) {
    // Appended atom samples keep point masses exact; subsample huge supports
    // (the estimate stays a lower bound either way).
    std::size_t stride = mu.atoms.size() > 4096 ? (mu.atoms.size() + 4095) / 4096 : 1;
    for (std::size_t i = 0; i < mu.atoms.size(); i += stride) {
      zs.push_back(mu.atoms[i].position);
    }
  }

  TsNormEstimate est;
  est.s = s;
  std::vector<double> log_t, log_sup;
  double ratio = grid.t_max / grid.t_min;
  for (int it = 0; it < grid.nt; ++it) {
    double t = grid.t_min * std::pow(ratio, static_cast<double>(it) / (grid.nt - 1));
    double scale = std::pow(t, -s);
    double sup_f = 0;
    Complex arg_z;
    for (const Complex& z : zs) {
      double f = poisson_transform(mu, z, t);
      if (std::abs(f) > sup_f) {
        sup_f = std::abs(f);
        arg_z = z;
      }
    }
    double normalized = scale * sup_f;
    if (normalized > est.value) {
      est.value = normalized;
      est.attaining_z = arg_z;
      est.attaining_t = t;
    }
    if (sup_f > 0 && t <= grid.t_min * 1000.0) {
      log_t.push_back(std::log2(t));
      log_sup.push_back(std::log2(normalized));
    }
  }

  if (log_t.size() >= 2) {
    double n = static_cast<double>(log_t.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < log_t.size(); ++i) {
      sx += log_t[i];
      sy += log_sup[i];
      sxx += log_t[i] * log_t[i];
      sxy += log_t[i] * log_sup[i];
    }
    double denom = n * sxx - sx * sx;
    if (denom != 0) est.little_o_slope = (n * sxy - sx * sy) / denom;
  }
  est.tmin_limited =
      est.attaining_t <= grid.t_min * (1 + 1e-12) && est.little_o_slope < -0.1;
  return est;
}

TsNormEstimate ts_norm_estimate(const DiscreteMeasure& mu, double s) {
  return ts_norm_estimate(mu, s, PoissonGridSpec::for_measure(mu));
}

Complex cauchy_transform(const DiscreteMeasure& mu, Complex z) {
  double min_dist = std::numeric_limits<double>::infinity();
  Complex nearest;
  for (const auto& a : mu.atoms) {
    double d = std::abs(z - a.position);
    if (d < min_dist) {
      min_dist = d;
      nearest = a.position;
    }
  }
  if (!mu.atoms.empty() && min_dist <= mu.exclusion_radius) {
    fail(ErrorCode::TooCloseToSupport,
         "evaluation point within " + std::to_string(min_dist) +
             " of atom (" + std::to_string(nearest.real()) + "," +
             std::to_string(nearest.imag()) + ")");
  }
  Complex sum = 0;
  for (const auto& a : mu.atoms) sum += a.weight / (z - a.position);
  return sum / kPi;
}

Complex cauchy_eval_pairing(const DiscreteMeasure& mu, Complex b,
                            const GridFunction& chi_re,
                            const GridFunction& chi_im) {
  for (const auto& a : mu.atoms) {
    if (std::abs(b - a.position) <= mu.exclusion_radius) {
      fail(ErrorCode::BInSupport, "pairing point lies in the support");
    }
  }
  Complex sum = 0;
  for (const auto& a : mu.atoms) {
    if (!chi_re.contains(a.position) || !chi_im.contains(a.position)) {
      fail(ErrorCode::ChiMismatchOnSupport,
           "chi is not sampled on the support");
    }
    Complex sample{chi_re.eval(a.position), chi_im.eval(a.position)};
    Complex expected = 1.0 / (a.position - b);
    if (std::abs(sample - expected) > 1e-9) {
      fail(ErrorCode::ChiMismatchOnSupport,
           "chi does not equal 1/(z-b) on the support");
    }
    sum += a.weight * sample;
  }
  return -sum / kPi;
}

std::pair<GridFunction, GridFunction> sample_cauchy_chi(
    const DiscreteMeasure& mu, Complex b) {
  double h = mu.exclusion_radius > 0 ? mu.exclusion_radius : 1.0 / 256;
  Rect box = mu.bounding_box().dilated(2 * h);
  GridFunction re, im;
  re.spacing = im.spacing = h;
  // Anchor the node lattice on the first atom so lattice-aligned measures
  // (leaf-center atoms in particular) evaluate chi on exact nodes.
  Complex anchor = mu.atoms.empty() ? Complex{0, 0} : mu.atoms.front().position;
  double x0 = anchor.real() - h * std::ceil((anchor.real() - box.x0) / h);
  double y0 = anchor.imag() - h * std::ceil((anchor.imag() - box.y0) / h);
  re.origin = im.origin = Complex{x0, y0};
  re.cols = im.cols = static_cast<int>(std::ceil((box.x1 - x0) / h)) + 2;
  re.rows = im.rows = static_cast<int>(std::ceil((box.y1 - y0) / h)) + 2;
  re.values.resize(static_cast<std::size_t>(re.rows) * re.cols);
  im.values.resize(re.values.size());
  for (int r = 0; r < re.rows; ++r) {
    for (int c = 0; c < re.cols; ++c) {
      Complex v = 1.0 / (re.node(r, c) - b);
      re.at(r, c) = v.real();
      im.at(r, c) = v.imag();
    }
  }
  return {std::move(re), std::move(im)};
}

DiscreteMeasure vitushkin_localize(const DiscreteMeasure& mu,
                                   const GridFunction& phi) {
  DiscreteMeasure out;
  out.exclusion_radius = mu.exclusion_radius;
  for (const auto& a : mu.atoms) {
    if (!phi.contains(a.position)) {
      fail(ErrorCode::PhiDomainMismatch,
           "atom outside the sampled domain of phi");
    }
    double w = a.weight * phi.eval(a.position);
    if (w != 0.0) out.atoms.push_back({a.position, w});
  }
  return out;
}

}  // namespace lipcap
