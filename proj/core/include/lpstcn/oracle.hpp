#pragma once

#include <stdexcept>
#include <vector>

#include "lpstcn/graph.hpp"
#include "lpstcn/solution.hpp"

namespace lpstcn {

struct SizeGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OracleLimits {
  long path_cap = 1000000;  // abort enumeration past this many paths
  double time_limit_s = kInfinity;
};

/// Every elementary first-layer path from the origin with at most arc_limit
/// arcs, in depth-first lexicographic order. Throws SizeGuardError past the
/// cap.
std::vector<Path> enumerate_all_paths(const Instance& inst, long path_cap = 1000000);

/// Brute-force reference: builds the master model over the complete path set
/// crossed with every vehicle type and solves it to optimality. Slow by
/// design; shares only the graph types, master builder and LP/MIP kernel
/// with the staged solver, so agreement between the two is meaningful.
Solution solve_exact(const Instance& inst, const OracleLimits& limits = {});

}  // namespace lpstcn
