#include "lpstcn/pricing.hpp"

#include <algorithm>
#include <stdexcept>

namespace lpstcn {

double reduced_cost(const Instance& inst, const Path& path, int vehicle_id,
                    const DualSolution& duals) {
  const VehicleType& k = inst.vehicle(vehicle_id);
  double r = 0.0;
  for (int a : path.arc_ids) {
    const Arc& arc = inst.arcs[a];
    r += k.unit_cost * arc.length - k.capacity * duals[a];
  }
  return r;
}

std::vector<Column> initial_columns(const Instance& inst) {
  std::vector<Column> columns;
  for (int v : inst.first_layer) {
    Path direct = make_path(inst, {v});
    for (const VehicleType& k : inst.fleet) {
      columns.push_back(Column{direct, k.id});
    }
  }
  return dedup_columns(std::move(columns));
}

bool label_dominates(const Label& a, const Label& b) {
  return a.node == b.node && (a.visited & ~b.visited) == 0 &&
         a.reduced_cost <= b.reduced_cost && a.length <= b.length &&
         a.num_arcs <= b.num_arcs;
}

namespace {

Path reconstruct(const Instance& inst, const std::vector<Label>& pool, int id) {
  std::vector<int> arcs;
  for (int at = id; at >= 0 && pool[at].pred_arc >= 0; at = pool[at].pred_label) {
    arcs.push_back(pool[at].pred_arc);
  }
  std::reverse(arcs.begin(), arcs.end());
  Path path;
  for (int a : arcs) {
    path.arc_ids.push_back(a);
    path.node_seq.push_back(inst.arcs[a].head);
    path.length += inst.arcs[a].length;
  }
  return path;
}

}  // namespace

std::vector<Column> price_columns(const Instance& inst, const DualSolution& duals,
                                  int vehicle_id, double eps, bool use_dominance) {
  if (inst.num_first_layer() > 64) {
    throw std::invalid_argument("price_columns: more than 64 first-layer nodes");
  }
  const VehicleType& k = inst.vehicle(vehicle_id);

  std::vector<Label> pool;
  std::vector<char> dead;
  std::vector<std::vector<int>> at_node(inst.num_nodes());  // surviving label ids

  pool.push_back(Label{Instance::kOrigin, 0.0, 0.0, 0, 0, -1, -1});
  dead.push_back(false);

  // Labels extend in creation order; arc count only grows, so dominance
  // checks always see labels with no more arcs than the candidate.
  for (std::size_t cur = 0; cur < pool.size(); ++cur) {
    if (dead[cur]) continue;
    const Label parent = pool[cur];
    if (parent.num_arcs >= inst.arc_limit) continue;
    for (int a : inst.out_arcs[parent.node]) {
      const Arc& arc = inst.arcs[a];
      if (arc.kind != ArcKind::FirstLayer) continue;
      int rank = inst.first_layer_rank[arc.head];
      std::uint64_t bit = std::uint64_t{1} << rank;
      if (parent.visited & bit) continue;

      Label next;
      next.node = arc.head;
      next.reduced_cost =
          parent.reduced_cost + k.unit_cost * arc.length - k.capacity * duals[a];
      next.length = parent.length + arc.length;
      next.num_arcs = parent.num_arcs + 1;
      next.visited = parent.visited | bit;
      next.pred_label = static_cast<int>(cur);
      next.pred_arc = a;

      if (use_dominance) {
        bool dominated = false;
        for (int other : at_node[next.node]) {
          if (!dead[other] && label_dominates(pool[other], next)) {
            dominated = true;
            break;
          }
        }
        if (dominated) continue;
        for (int other : at_node[next.node]) {
          if (!dead[other] && label_dominates(next, pool[other])) dead[other] = true;
        }
      }
      at_node[next.node].push_back(static_cast<int>(pool.size()));
      pool.push_back(next);
      dead.push_back(false);
    }
  }

  std::vector<Column> found;
  for (std::size_t id = 1; id < pool.size(); ++id) {
    if (dead[id]) continue;
    if (pool[id].reduced_cost < -eps) {
      found.push_back(Column{reconstruct(inst, pool, static_cast<int>(id)), vehicle_id});
    }
  }
  return dedup_columns(std::move(found));
}

CgOutcome run_column_generation(const Instance& inst, double eps) {
  CgOutcome outcome;
  outcome.columns = initial_columns(inst);

  constexpr long kIterationCap = 100000;
  for (long iter = 0; iter < kIterationCap; ++iter) {
    RmpModel rmp = build_rmp(inst, outcome.columns);
    LpResult lp = solve_lp(rmp.model);
    if (lp.status != LpStatus::Optimal) {
      throw std::runtime_error(std::string("column generation: master LP is ") +
                               to_string(lp.status));
    }
    outcome.lower_bound = lp.objective;
    outcome.duals = extract_duals(rmp, lp);
    ++outcome.iterations;

    std::vector<Column> negatives;
    for (const VehicleType& k : inst.fleet) {
      std::vector<Column> priced = price_columns(inst, outcome.duals, k.id, eps);
      negatives.insert(negatives.end(), priced.begin(), priced.end());
    }
    std::vector<Column> merged = outcome.columns;
    merged.insert(merged.end(), negatives.begin(), negatives.end());
    merged = dedup_columns(std::move(merged));
    if (merged.size() == outcome.columns.size()) break;  // nothing new priced out
    outcome.columns = std::move(merged);
  }
  return outcome;
}

}  // namespace lpstcn
