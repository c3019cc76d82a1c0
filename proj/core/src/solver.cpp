#include "lpstcn/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "lpstcn/cuts_bounds.hpp"
#include "lpstcn/enumeration.hpp"
#include "lpstcn/linear_model.hpp"
#include "lpstcn/pricing.hpp"

namespace lpstcn {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Feasible plan used only when an integer solve times out before producing
// any incumbent: outsource each second-layer demand through its cheapest
// in-arc and cover every first-layer load with largest-capacity vehicles on
// the direct arc.
Solution direct_plan(const Instance& inst) {
  Solution s;
  s.flows.assign(inst.num_arcs(), 0.0);
  std::vector<double> load(inst.num_nodes(), 0.0);
  for (int v = 1; v < inst.num_nodes(); ++v) load[v] = inst.demand(v);

  for (int v : inst.second_layer) {
    if (load[v] <= 0) continue;
    int best_arc = -1;
    double best_rate = kInfinity;
    for (int a : inst.in_arcs[v]) {
      double cost = inst.arcs[a].outsource_rate * inst.arcs[a].length;
      if (cost < best_rate) {
        best_rate = cost;
        best_arc = a;
      }
    }
    s.flows[best_arc] = load[v];
    s.outsourcing_cost += best_rate * load[v];
    load[inst.arcs[best_arc].tail] += load[v];
  }
  const VehicleType& big = inst.fleet.back();
  for (int v : inst.first_layer) {
    if (load[v] <= 0) continue;
    int a = inst.find_arc(Instance::kOrigin, v);
    long count = static_cast<long>(std::ceil(load[v] / big.capacity - 1e-9));
    s.flows[a] = load[v];
    Column col{make_path(inst, {v}), big.id};
    s.first_layer_cost += big.unit_cost * col.path.length * static_cast<double>(count);
    s.vehicle_plan.push_back({col, count});
  }
  s.objective = s.first_layer_cost + s.outsourcing_cost;
  return s;
}

}  // namespace

Solution solve(const Instance& instance, const SolveConfig& config) {
  Instance adjusted;
  const Instance* inst = &instance;
  if (config.arc_limit_override &&
      *config.arc_limit_override != instance.arc_limit) {
    adjusted = instance;
    adjusted.arc_limit = *config.arc_limit_override;
    inst = &adjusted;
  }

  const auto t0 = Clock::now();
  auto remaining = [&] {
    return std::max(0.0, config.time_limit_s - seconds_since(t0));
  };

  // Step 1: lower bound by column generation.
  CgOutcome cg = run_column_generation(*inst, config.eps);
  SolveStats stats;
  stats.lb = cg.lower_bound;
  stats.cg_iterations = cg.iterations;
  stats.columns_generated = static_cast<long>(cg.columns.size());
  stats.step_seconds[0] = seconds_since(t0);

  // Step 2: upper bound by an integer solve over the generated columns.
  double mark = seconds_since(t0);
  RmpModel restricted = build_rmp(*inst, cg.columns);
  append_vehicle_cover_rows(*inst, restricted);
  MipLimits ub_limits;
  ub_limits.time_limit_s = remaining();
  MipResult ub_result = solve_mip(restricted.model, ub_limits);
  stats.nodes_explored += ub_result.nodes_explored;

  std::optional<Solution> fallback;
  double ub;
  if (ub_result.has_incumbent) {
    ub = ub_result.objective;
  } else {
    fallback = direct_plan(*inst);
    ub = fallback->objective;
  }
  stats.ub = ub;
  stats.step_seconds[1] = seconds_since(t0) - mark;

  // Step 3: enumerate every column the lb/ub gap cannot exclude.
  mark = seconds_since(t0);
  std::vector<Column> final_columns = cg.columns;
  if (config.use_enumeration) {
    GapBudget budget = make_gap_budget(cg.lower_bound, ub, cg.duals);
    std::vector<Column> extra = enumerate_gap_columns(*inst, budget);
    stats.columns_enumerated = static_cast<long>(extra.size());
    final_columns.insert(final_columns.end(), extra.begin(), extra.end());
    final_columns = dedup_columns(std::move(final_columns));
  }
  stats.step_seconds[2] = seconds_since(t0) - mark;

  // Step 4: capacity cuts and vehicle-count bounds.
  mark = seconds_since(t0);
  RmpModel final_model = build_rmp(*inst, final_columns);
  append_vehicle_cover_rows(*inst, final_model);
  if (config.use_cuts) {
    apply_capacity_cuts(final_model, rounded_capacity_cuts(*inst, final_columns));
  }
  if (config.use_bounds) {
    apply_column_bounds(final_model, multi_arc_upper_bounds(*inst, final_columns));
    apply_column_bounds(final_model, single_arc_upper_bounds(*inst, final_columns));
  }
  stats.step_seconds[3] = seconds_since(t0) - mark;

  // Step 5: final integer solve. The step-2 incumbent is in hand, so the
  // cutoff sits exactly at its value: the search only looks for strictly
  // better solutions and otherwise proves the incumbent optimal within the
  // kernel's pruning tolerance.
  mark = seconds_since(t0);
  MipLimits final_limits;
  final_limits.time_limit_s = remaining();
  final_limits.upper_cutoff = ub;
  MipResult final_result = solve_mip(final_model.model, final_limits);
  stats.nodes_explored += final_result.nodes_explored;
  stats.step_seconds[4] = seconds_since(t0) - mark;

  // The result is certified once the final solve finishes. A final solve
  // that exhausts without beating the cutoff proves the step-2 incumbent
  // optimal for the final model.
  bool final_proven = final_result.status == MipStatus::Optimal ||
                      (final_result.status == MipStatus::Infeasible &&
                       ub_result.has_incumbent);

  Solution solution;
  if (final_result.has_incumbent) {
    solution = extract_solution(*inst, final_model, final_result.incumbent);
    stats.gap = final_proven ? 0.0 : final_result.gap;
  } else if (ub_result.has_incumbent) {
    solution = extract_solution(*inst, restricted, ub_result.incumbent);
    stats.gap = final_proven
                    ? 0.0
                    : (solution.objective - stats.lb) /
                          std::max(1.0, std::abs(solution.objective));
  } else {
    solution = *fallback;
    stats.gap = (solution.objective - stats.lb) /
                std::max(1.0, std::abs(solution.objective));
    final_proven = false;
  }

  stats.status = final_proven ? SolveStatus::Optimal : SolveStatus::TimeLimit;
  stats.exact = stats.status == SolveStatus::Optimal && config.use_enumeration;
  stats.wall_seconds = seconds_since(t0);
  solution.stats = stats;

  audit_solution(*inst, solution);
  return solution;
}

}  // namespace lpstcn
