#include "lpstcn/solution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lpstcn {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::TimeLimit: return "TimeLimit";
    case SolveStatus::Infeasible: return "Infeasible";
  }
  return "Unknown";
}

Solution extract_solution(const Instance& inst, const RmpModel& rmp,
                          const std::vector<double>& values) {
  Solution s;
  for (int j = 0; j < rmp.num_y(); ++j) {
    long count = std::llround(values[j]);
    if (count <= 0) continue;
    s.vehicle_plan.push_back({rmp.columns[j], count});
    const VehicleType& k = inst.vehicle(rmp.columns[j].vehicle);
    s.first_layer_cost += k.unit_cost * rmp.columns[j].path.length *
                          static_cast<double>(count);
  }
  s.flows.assign(inst.num_arcs(), 0.0);
  for (int a = 0; a < inst.num_arcs(); ++a) {
    double x = values[rmp.x_var[a]];
    s.flows[a] = x < 0 && x > -1e-9 ? 0.0 : x;
    if (inst.arcs[a].kind == ArcKind::CrossLayer) {
      s.outsourcing_cost += inst.arcs[a].outsource_rate * inst.arcs[a].length *
                            s.flows[a];
    }
  }
  s.objective = s.first_layer_cost + s.outsourcing_cost;
  return s;
}

namespace {

[[noreturn]] void audit_fail(const std::string& what) {
  throw std::logic_error("solution audit failed: " + what);
}

}  // namespace

void audit_solution(const Instance& inst, const Solution& solution) {
  const double scale = std::max(1.0, inst.total_demand);
  const double flow_tol = 1e-6 * scale;

  if (static_cast<int>(solution.flows.size()) != inst.num_arcs()) {
    audit_fail("flow vector size mismatch");
  }
  for (int a = 0; a < inst.num_arcs(); ++a) {
    if (solution.flows[a] < -flow_tol) audit_fail("negative flow");
  }
  for (const auto& [col, count] : solution.vehicle_plan) {
    if (count < 1) audit_fail("non-positive vehicle count in plan");
    if (col.vehicle < 1 || col.vehicle > inst.num_vehicle_types()) {
      audit_fail("unknown vehicle type in plan");
    }
    if (!path_is_valid(inst, col.path)) audit_fail("invalid path in plan");
  }

  // Flow conservation with w_o = total demand and w_i = -d_i.
  for (int v = 0; v < inst.num_nodes(); ++v) {
    double net = 0.0;
    for (int a : inst.out_arcs[v]) net += solution.flows[a];
    for (int a : inst.in_arcs[v]) net -= solution.flows[a];
    double w = inst.is_origin(v) ? inst.total_demand : -inst.demand(v);
    if (std::abs(net - w) > flow_tol) {
      audit_fail("flow conservation violated at " + inst.nodes[v].name);
    }
  }

  // Capacity per first-layer arc against the integer plan.
  std::vector<double> capacity(inst.num_arcs(), 0.0);
  for (const auto& [col, count] : solution.vehicle_plan) {
    double q = inst.vehicle(col.vehicle).capacity * static_cast<double>(count);
    for (int a : col.path.arc_ids) capacity[a] += q;
  }
  for (int a = 0; a < inst.num_arcs(); ++a) {
    if (inst.arcs[a].kind != ArcKind::FirstLayer) continue;
    if (solution.flows[a] > capacity[a] + flow_tol) {
      audit_fail("capacity violated on arc " + inst.nodes[inst.arcs[a].tail].name +
                 "->" + inst.nodes[inst.arcs[a].head].name);
    }
  }

  // Objective recomputation.
  double first_layer = 0.0;
  for (const auto& [col, count] : solution.vehicle_plan) {
    first_layer += inst.vehicle(col.vehicle).unit_cost * col.path.length *
                   static_cast<double>(count);
  }
  double outsourcing = 0.0;
  for (int a = 0; a < inst.num_arcs(); ++a) {
    if (inst.arcs[a].kind == ArcKind::CrossLayer) {
      outsourcing += inst.arcs[a].outsource_rate * inst.arcs[a].length *
                     solution.flows[a];
    }
  }
  double rel = std::max(1.0, std::abs(solution.objective));
  if (std::abs(first_layer - solution.first_layer_cost) > 1e-6 * rel ||
      std::abs(outsourcing - solution.outsourcing_cost) > 1e-6 * rel ||
      std::abs(first_layer + outsourcing - solution.objective) > 1e-6 * rel) {
    audit_fail("objective does not match its cost split");
  }

  if (!check_flow_decomposition(inst, solution.flows)) {
    audit_fail("flows do not decompose into demand-covering paths");
  }
}

bool check_flow_decomposition(const Instance& inst, const std::vector<double>& flows) {
  const double scale = std::max(1.0, inst.total_demand);
  const double eps = 1e-9 * scale;

  std::vector<double> residual = flows;
  std::vector<double> remaining(inst.num_nodes(), 0.0);
  for (int v = 1; v < inst.num_nodes(); ++v) remaining[v] = inst.demand(v);

  long guard = 10L * (inst.num_arcs() + inst.num_nodes()) + 100;
  while (guard-- > 0) {
    // Walk from the origin along the largest positive residual arcs until a
    // node with uncovered demand or a cycle appears.
    std::vector<int> walk_arcs;
    std::vector<int> walk_nodes{Instance::kOrigin};
    std::vector<char> on_walk(inst.num_nodes(), 0);
    on_walk[Instance::kOrigin] = 1;
    int at = Instance::kOrigin;
    bool progressed = false;

    for (;;) {
      int next_arc = -1;
      double best = eps;
      for (int a : inst.out_arcs[at]) {
        if (residual[a] > best) {
          best = residual[a];
          next_arc = a;
        }
      }
      if (next_arc < 0) break;  // no outgoing residual
      int head = inst.arcs[next_arc].head;
      if (on_walk[head]) {
        // Cycle: cancel it and restart the walk.
        double cycle_min = residual[next_arc];
        std::size_t start = 0;
        while (walk_nodes[start] != head) ++start;
        for (std::size_t i = start; i < walk_arcs.size(); ++i) {
          cycle_min = std::min(cycle_min, residual[walk_arcs[i]]);
        }
        residual[next_arc] -= cycle_min;
        for (std::size_t i = start; i < walk_arcs.size(); ++i) {
          residual[walk_arcs[i]] -= cycle_min;
        }
        progressed = true;
        break;
      }
      walk_arcs.push_back(next_arc);
      walk_nodes.push_back(head);
      on_walk[head] = 1;
      at = head;
      if (remaining[at] > eps) {
        double amount = remaining[at];
        for (int a : walk_arcs) amount = std::min(amount, residual[a]);
        for (int a : walk_arcs) residual[a] -= amount;
        remaining[at] -= amount;
        progressed = true;
        break;
      }
    }
    if (!progressed) break;
  }

  const double tol = 1e-6 * scale;
  for (int v = 1; v < inst.num_nodes(); ++v) {
    if (remaining[v] > tol) return false;
  }
  return true;
}

}  // namespace lpstcn
