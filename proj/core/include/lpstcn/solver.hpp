#pragma once

#include <optional>

#include "lpstcn/graph.hpp"
#include "lpstcn/solution.hpp"

namespace lpstcn {

struct SolveConfig {
  double time_limit_s = 1800.0;  // budget for the two integer solves
  double eps = 1e-6;
  bool use_cuts = true;
  bool use_bounds = true;
  bool use_enumeration = true;  // off: restricted model only, result heuristic
  std::optional<int> arc_limit_override;
};

/// Five-stage exact solve: column generation for the lower bound, an integer
/// solve over the generated columns for the upper bound, reduced-cost-bounded
/// enumeration of the remaining columns, capacity cuts plus vehicle-count
/// bound tightening, and the final integer solve. With enumeration on and an
/// Optimal status the returned objective is the certified optimum.
///
/// The returned solution always passes audit_solution. Throws on invalid
/// instances (the validator should run first) and on internal errors.
Solution solve(const Instance& inst, const SolveConfig& config = {});

}  // namespace lpstcn
