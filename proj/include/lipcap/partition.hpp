#pragma once

#include <map>
#include <vector>

#include "lipcap/grid_function.hpp"
#include "lipcap/raster.hpp"

namespace lipcap {

struct PartitionAtom {
  GridFunction phi;      // in [0, 1], supported in 5 * home
  DyadicSquare home;
  int generation = 0;    // side of home is 2^-generation
};

struct PartitionResult {
  std::vector<PartitionAtom> atoms;
  GridFunction sum_field;                    // running sum of the atoms
  double sum_error_max = 0;                  // max |sum - 1| on the E-neighborhood
  int support_violations = 0;                // nonzero nodes outside 5 * home
  int k = 0;
  std::map<int, double> generation_max_nk;   // per generation, max N_k over atoms
  std::map<int, double> tau_gradient_scaled; // max |grad tau_m| * 2^-m
  double max_nk = 0;
};

// Partition of unity subordinate to dyadic squares covering the occupied set:
// sorts the squares by size, selects a finite subcover by 5/4-interiors,
// prunes squares hidden in the cordon (5/4)S \ S of an earlier square, groups
// the survivors into generations, allocates tessellation neighbors to nearest
// squares, and runs the correction recursion tau_{m+1} = tau_m + (1-tau_m)
// sigma_{m+1}.  The result sums to 1 on a neighborhood of E (one eighth of
// the finest cover side) and every atom is supported in 5 * home.
PartitionResult build_partition(std::vector<DyadicSquare> squares,
                                const RasterSet& E, int k);

}  // namespace lipcap
