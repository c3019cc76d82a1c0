#pragma once

#include <array>
#include <vector>

#include "lpstcn/graph.hpp"
#include "lpstcn/master.hpp"

namespace lpstcn {

enum class SolveStatus { Optimal, TimeLimit, Infeasible };
const char* to_string(SolveStatus s);

struct SolveStats {
  SolveStatus status = SolveStatus::Infeasible;
  bool exact = false;  // Optimal with enumeration on: certified optimum
  double lb = 0.0;
  double ub = 0.0;
  double gap = 0.0;
  long cg_iterations = 0;
  long columns_generated = 0;
  long columns_enumerated = 0;
  long nodes_explored = 0;
  std::array<double, 5> step_seconds{};  // lb, ub, enumeration, cuts, final mip
  double wall_seconds = 0.0;
};

/// Integer vehicle plan plus arc flows, with the cost breakdown.
struct Solution {
  std::vector<std::pair<Column, long>> vehicle_plan;  // count >= 1 entries only
  std::vector<double> flows;                          // per arc id, m^3
  double objective = 0.0;
  double first_layer_cost = 0.0;
  double outsourcing_cost = 0.0;
  SolveStats stats;
};

/// Maps a master-model incumbent back to paths and flows. Counts are rounded
/// to integers; zero-count columns are dropped.
Solution extract_solution(const Instance& inst, const RmpModel& rmp,
                          const std::vector<double>& values);

/// Independent feasibility audit: flow conservation at every node, arc
/// capacity against the vehicle plan, nonnegative flows, integral counts and
/// the objective recomputation. Throws std::logic_error with a description
/// on any violation.
void audit_solution(const Instance& inst, const Solution& solution);

/// Path-decomposition audit: greedily peels origin-to-destination paths
/// (removing cycles) out of the flows and checks every demand is covered.
/// Returns false when peeling cannot cover some demand.
bool check_flow_decomposition(const Instance& inst, const std::vector<double>& flows);

}  // namespace lpstcn
