#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "lipcap/content.hpp"

namespace lipcap::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

// Runs the full verification suite; deterministic for a fixed seed.
std::vector<CriterionResult> run_all(std::uint64_t seed = 20250810);

// Prints one pass/fail line per criterion; returns true iff all passed.
bool report(std::ostream& out, std::uint64_t seed = 20250810);

// Exhaustive enumeration of every antichain cover of the quadtree; the
// independent oracle for the covering DP (exponential, depth <= 3 use only).
double brute_min_cover(const RasterSet& set, const Gauge& gauge);

}  // namespace lipcap::acceptance
