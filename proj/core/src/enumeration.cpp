#include "lpstcn/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lpstcn {

GapBudget make_gap_budget(double lb, double ub, DualSolution duals) {
  double raw = ub - lb;
  if (raw < -1e-6) {
    throw std::invalid_argument("make_gap_budget: ub below lb beyond tolerance");
  }
  GapBudget budget;
  budget.lb = lb;
  budget.ub = ub;
  budget.gap = std::max(0.0, raw);
  budget.duals = std::move(duals);
  return budget;
}

namespace {

struct Dfs {
  const Instance& inst;
  const DualSolution& duals;
  const VehicleType& veh;
  double threshold;
  // stop[v][t]: cheapest reduced-cost walk from v using at most t arcs
  // (stopping allowed); cont[v][t]: the same but with at least one arc.
  // Walks ignore elementarity, so both are admissible bounds.
  std::vector<std::vector<double>> stop, cont;
  std::vector<Column>& out;

  double arc_weight(int a) const {
    const Arc& arc = inst.arcs[a];
    return veh.unit_cost * arc.length - veh.capacity * duals[a];
  }

  void build_bounds() {
    int depth = inst.arc_limit;
    stop.assign(inst.num_nodes(), std::vector<double>(depth + 1, 0.0));
    cont.assign(inst.num_nodes(), std::vector<double>(depth + 1, kInfinity));
    for (int t = 1; t <= depth; ++t) {
      for (int v = 0; v < inst.num_nodes(); ++v) {
        double best = kInfinity;
        for (int a : inst.out_arcs[v]) {
          if (inst.arcs[a].kind != ArcKind::FirstLayer) continue;
          best = std::min(best, arc_weight(a) + stop[inst.arcs[a].head][t - 1]);
        }
        cont[v][t] = best;
        stop[v][t] = std::min(0.0, best);
      }
    }
  }

  void visit(Path& prefix, double r, std::uint64_t visited, int node) {
    if (prefix.num_arcs() > 0 && r < threshold) {
      out.push_back(Column{prefix, veh.id});
    }
    int remaining = inst.arc_limit - prefix.num_arcs();
    if (remaining <= 0) return;
    if (r + cont[node][remaining] >= threshold) return;
    for (int a : inst.out_arcs[node]) {
      const Arc& arc = inst.arcs[a];
      if (arc.kind != ArcKind::FirstLayer) continue;
      std::uint64_t bit = std::uint64_t{1} << inst.first_layer_rank[arc.head];
      if (visited & bit) continue;
      prefix.arc_ids.push_back(a);
      prefix.node_seq.push_back(arc.head);
      prefix.length += arc.length;
      visit(prefix, r + arc_weight(a), visited | bit, arc.head);
      prefix.length -= arc.length;
      prefix.node_seq.pop_back();
      prefix.arc_ids.pop_back();
    }
  }
};

}  // namespace

std::vector<Column> enumerate_gap_columns(const Instance& inst, const GapBudget& budget) {
  if (inst.num_first_layer() > 64) {
    throw std::invalid_argument("enumerate_gap_columns: more than 64 first-layer nodes");
  }
  std::vector<Column> out;
  const double threshold = budget.gap + 1e-9;
  for (const VehicleType& veh : inst.fleet) {
    Dfs dfs{inst, budget.duals, veh, threshold, {}, {}, out};
    if (std::isfinite(threshold)) {
      dfs.build_bounds();
    } else {
      // Debug mode: infinite budget enumerates everything.
      dfs.stop.assign(inst.num_nodes(),
                      std::vector<double>(inst.arc_limit + 1, -kInfinity));
      dfs.cont = dfs.stop;
    }
    Path prefix;
    dfs.visit(prefix, 0.0, 0, Instance::kOrigin);
  }
  return dedup_columns(std::move(out));
}

}  // namespace lpstcn
