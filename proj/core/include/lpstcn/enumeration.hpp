#pragma once

#include <vector>

#include "lpstcn/graph.hpp"
#include "lpstcn/master.hpp"

namespace lpstcn {

/// Reduced-cost budget for enumeration: a column whose reduced cost under
/// `duals` reaches ub - lb cannot improve on the known integer solution.
struct GapBudget {
  double lb = 0.0;
  double ub = 0.0;
  double gap = 0.0;  // max(0, ub - lb)
  DualSolution duals;
};

/// Throws std::invalid_argument when ub < lb beyond tolerance; a slightly
/// negative difference clamps to zero.
GapBudget make_gap_budget(double lb, double ub, DualSolution duals);

/// Enumerates every feasible (path, vehicle) column whose reduced cost is
/// below gap + 1e-9. Depth-bounded DFS from the origin with an admissible
/// completion bound per (node, remaining depth); arc reduced costs may be
/// negative, so prefixes are pruned only when no completion can reach the
/// threshold. Output is sorted by (node sequence, vehicle id).
std::vector<Column> enumerate_gap_columns(const Instance& inst, const GapBudget& budget);

}  // namespace lpstcn
