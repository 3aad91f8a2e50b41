#include "lipcap/partition.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace lipcap {

namespace {

bool rect_in_open_rect(const Rect& inner, const Rect& outer) {
  return inner.x0 > outer.x0 && inner.x1 < outer.x1 && inner.y0 > outer.y0 &&
         inner.y1 < outer.y1;
}

// Strictly inside the cordon (5/4)S \ S: contained in the dilation, disjoint
// from the closed square itself.
bool in_cordon(const DyadicSquare& candidate, const DyadicSquare& owner) {
  Rect c = candidate.rect();
  return owner.dilated_rect(1.25).contains(c) && !owner.rect().intersects(c);
}

struct CellKey {
  std::int64_t m, r;
  bool operator<(const CellKey& o) const {
    return m < o.m || (m == o.m && r < o.r);
  }
  bool operator==(const CellKey& o) const = default;
};

struct SharedGrid {
  Complex origin;
  double spacing = 0;
  int rows = 0, cols = 0;

  Complex node(int row, int col) const {
    return origin + Complex{col * spacing, row * spacing};
  }
  int col_of(double x, bool round_up) const {
    double f = (x - origin.real()) / spacing;
    int c = round_up ? static_cast<int>(std::ceil(f)) : static_cast<int>(std::floor(f));
    return std::clamp(c, 0, cols - 1);
  }
  int row_of(double y, bool round_up) const {
    double f = (y - origin.imag()) / spacing;
    int r = round_up ? static_cast<int>(std::ceil(f)) : static_cast<int>(std::floor(f));
    return std::clamp(r, 0, rows - 1);
  }
};

}  // namespace

PartitionResult build_partition(std::vector<DyadicSquare> squares,
                                const RasterSet& E, int k) {
  for (const auto& s : squares) {
    if (s.n < 0) fail(ErrorCode::SquareTooLarge, "cover squares need side <= 1");
  }
  std::sort(squares.begin(), squares.end(), [](const auto& a, const auto& b) {
    if (a.n != b.n) return a.n < b.n;  // larger squares first
    if (a.m != b.m) return a.m < b.m;
    return a.r < b.r;
  });
  squares.erase(std::unique(squares.begin(), squares.end()), squares.end());

  // Cover precondition: every occupied leaf inside the 5/4-interior of some
  // input square.
  std::vector<Rect> leaf_rects;
  leaf_rects.reserve(E.leaves.size());
  for (auto code : E.leaves) leaf_rects.push_back(E.leaf_rect(code));
  for (const Rect& leaf : leaf_rects) {
    bool covered = false;
    for (const auto& s : squares) {
      if (rect_in_open_rect(leaf, s.dilated_rect(1.25))) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      fail(ErrorCode::NotACover,
           "an occupied leaf is not inside any 5/4-dilated cover square");
    }
  }

  // Cordon pruning, one pass in sorted order.
  std::vector<bool> removed(squares.size(), false);
  for (std::size_t i = 0; i < squares.size(); ++i) {
    if (removed[i]) continue;
    for (std::size_t j = 0; j < squares.size(); ++j) {
      if (j == i || removed[j]) continue;
      if (squares[j].n > squares[i].n && in_cordon(squares[j], squares[i])) {
        removed[j] = true;
      }
    }
  }

  // Greedy finite subcover in the sorted order; a square is kept iff its
  // 5/4-interior covers a leaf nobody earlier covered.  Leaves orphaned by
  // the pruning get a second chance against 3/2-dilations (the region where
  // the recursion forces the sum to 1).
  std::vector<DyadicSquare> kept;
  std::vector<bool> leaf_covered(leaf_rects.size(), false);
  for (std::size_t i = 0; i < squares.size(); ++i) {
    if (removed[i]) continue;
    Rect dil = squares[i].dilated_rect(1.25);
    bool useful = false;
    for (std::size_t l = 0; l < leaf_rects.size(); ++l) {
      if (!leaf_covered[l] && rect_in_open_rect(leaf_rects[l], dil)) {
        leaf_covered[l] = true;
        useful = true;
      }
    }
    if (useful) kept.push_back(squares[i]);
  }
  for (std::size_t l = 0; l < leaf_rects.size(); ++l) {
    if (leaf_covered[l]) continue;
    bool saved = false;
    for (std::size_t i = 0; i < squares.size() && !saved; ++i) {
      if (removed[i]) continue;
      if (squares[i].dilated_rect(1.5).contains(leaf_rects[l])) {
        kept.push_back(squares[i]);
        leaf_covered[l] = true;
        saved = true;
      }
    }
    if (!saved) fail(ErrorCode::NotACover, "pruning left a leaf uncovered");
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.n != b.n) return a.n < b.n;
    if (a.m != b.m) return a.m < b.m;
    return a.r < b.r;
  });
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());

  // Generations by side.
  std::map<int, std::vector<DyadicSquare>> generations;
  for (const auto& s : kept) generations[s.n].push_back(s);
  int finest = generations.rbegin()->first;

  // Shared grid over the union of the 5S boxes.
  SharedGrid grid;
  grid.spacing = std::ldexp(1.0, -finest) / 32;
  Rect total = kept.front().dilated_rect(5.0);
  for (const auto& s : kept) {
    Rect box = s.dilated_rect(5.0);
    total.x0 = std::min(total.x0, box.x0);
    total.y0 = std::min(total.y0, box.y0);
    total.x1 = std::max(total.x1, box.x1);
    total.y1 = std::max(total.y1, box.y1);
  }
  total = total.dilated(2 * grid.spacing);
  grid.origin = {total.x0, total.y0};
  grid.cols = static_cast<int>(std::ceil(total.width() / grid.spacing)) + 1;
  grid.rows = static_cast<int>(std::ceil(total.height() / grid.spacing)) + 1;

  std::vector<double> tau(static_cast<std::size_t>(grid.rows) * grid.cols, 0.0);
  auto tau_at = [&](int r, int c) -> double& {
    return tau[static_cast<std::size_t>(r) * grid.cols + c];
  };

  PartitionResult result;
  result.k = k;
  SmoothProfile profile;

  for (const auto& [m, members] : generations) {
    std::set<CellKey> gen_set;
    for (const auto& s : members) gen_set.insert({s.m, s.r});

    // G_m^+ : all level-m tessellation squares touching the generation.
    std::set<CellKey> plus;
    for (const auto& s : members) {
      for (int dm = -1; dm <= 1; ++dm) {
        for (int dr = -1; dr <= 1; ++dr) plus.insert({s.m + dm, s.r + dr});
      }
    }

    // Nearest-square allocation; ties broken by lexicographic (m, r).
    std::map<CellKey, std::vector<DyadicSquare>> allocated;
    for (const auto& cell : plus) {
      CellKey home = cell;
      if (gen_set.find(cell) == gen_set.end()) {
        bool found = false;
        for (int dm = -1; dm <= 1 && !found; ++dm) {
          for (int dr = -1; dr <= 1; ++dr) {
            CellKey cand{cell.m + dm, cell.r + dr};
            if (gen_set.count(cand)) {
              home = cand;
              found = true;
              break;
            }
          }
        }
      }
      allocated[home].push_back(DyadicSquare{cell.m, cell.r, m});
    }

    double tau_snapshot_scale = std::ldexp(1.0, -m);
    std::vector<double> tau_prev = tau;

    for (const auto& s : members) {
      const auto& cells = allocated[{s.m, s.r}];
      // Crop covering the supports (3/2)T of the allocated cells.
      Rect box = DyadicSquare{cells.front().m, cells.front().r, m}.dilated_rect(1.5);
      for (const auto& t : cells) {
        Rect b = t.dilated_rect(1.5);
        box.x0 = std::min(box.x0, b.x0);
        box.y0 = std::min(box.y0, b.y0);
        box.x1 = std::max(box.x1, b.x1);
        box.y1 = std::max(box.y1, b.y1);
      }
      int c0 = grid.col_of(box.x0, false), c1 = grid.col_of(box.x1, true);
      int r0 = grid.row_of(box.y0, false), r1 = grid.row_of(box.y1, true);

      GridFunction phi;
      phi.origin = grid.node(r0, c0);
      phi.spacing = grid.spacing;
      phi.rows = r1 - r0 + 1;
      phi.cols = c1 - c0 + 1;
      phi.values.assign(static_cast<std::size_t>(phi.rows) * phi.cols, 0.0);
      for (int r = r0; r <= r1; ++r) {
        for (int c = c0; c <= c1; ++c) {
          Complex z = grid.node(r, c);
          double psi_sum = 0;
          for (const auto& t : cells) psi_sum += tess_psi(t, z, profile);
          if (psi_sum == 0.0) continue;
          double v = (1.0 - tau_prev[static_cast<std::size_t>(r) * grid.cols + c]) * psi_sum;
          phi.at(r - r0, c - c0) = v;
          tau_at(r, c) += v;
        }
      }
      result.atoms.push_back({std::move(phi), s, m});
    }

    // Gradient of tau_m, scaled by the generation side.
    double grad_max = 0;
    for (int r = 1; r + 1 < grid.rows; ++r) {
      for (int c = 1; c + 1 < grid.cols; ++c) {
        double gx = (tau_at(r, c + 1) - tau_at(r, c - 1)) / (2 * grid.spacing);
        double gy = (tau_at(r + 1, c) - tau_at(r - 1, c)) / (2 * grid.spacing);
        grad_max = std::max({grad_max, std::abs(gx), std::abs(gy)});
      }
    }
    result.tau_gradient_scaled[m] = grad_max * tau_snapshot_scale;
  }

  // Seminorms, each at its generation's native resolution (side/32) so the
  // finite-difference estimates are comparable across scales.
  for (const auto& atom : result.atoms) {
    int stride = 1 << (finest - atom.generation);
    double v = nk_seminorm(subsample(atom.phi, stride), k).value;
    auto& slot = result.generation_max_nk[atom.generation];
    slot = std::max(slot, v);
    result.max_nk = std::max(result.max_nk, v);
  }

  // Support containment, exact cellwise.
  for (const auto& atom : result.atoms) {
    Rect allowed = atom.home.dilated_rect(5.0);
    for (int r = 0; r < atom.phi.rows; ++r) {
      for (int c = 0; c < atom.phi.cols; ++c) {
        if (atom.phi.at(r, c) != 0.0 && !allowed.contains(atom.phi.node(r, c))) {
          ++result.support_violations;
        }
      }
    }
  }

  // Sum error over the E-neighborhood: occupied leaves dilated by one eighth
  // of the finest cover side.
  double margin = std::ldexp(1.0, -finest) / 8;
  for (const Rect& leaf : leaf_rects) {
    Rect box = leaf.dilated(margin);
    int c0 = grid.col_of(box.x0, true), c1 = grid.col_of(box.x1, false);
    int r0 = grid.row_of(box.y0, true), r1 = grid.row_of(box.y1, false);
    for (int r = r0; r <= r1; ++r) {
      for (int c = c0; c <= c1; ++c) {
        if (!box.contains(grid.node(r, c))) continue;
        result.sum_error_max =
            std::max(result.sum_error_max, std::abs(tau_at(r, c) - 1.0));
      }
    }
  }

  result.sum_field.origin = grid.origin;
  result.sum_field.spacing = grid.spacing;
  result.sum_field.rows = grid.rows;
  result.sum_field.cols = grid.cols;
  result.sum_field.values = std::move(tau);
  return result;
}

}  // namespace lipcap
