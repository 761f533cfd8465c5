#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "simplexdecomp/sicpovm.hpp"

namespace simplexdecomp {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelftestOptions {
  int n_max = 3;
  double tol = 1e-10;  ///< reconstruction tolerance for exact SICs
  FiducialCache cache;
  int search_seeds = 20;
  std::uint64_t seed = 20240601;
};

/// Runs the module invariants on reduced grids for N = 2..n_max. Dimensions without an exact
/// or cached fiducial are searched for with find_fiducial.
std::vector<CheckResult> run_selftest(const SelftestOptions& opt);

}  // namespace simplexdecomp
