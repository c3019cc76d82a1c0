#include "lpstcn/oracle.hpp"

#include <algorithm>

#include "lpstcn/linear_model.hpp"
#include "lpstcn/master.hpp"

namespace lpstcn {

namespace {

void dfs_paths(const Instance& inst, Path& prefix, std::vector<char>& visited,
               int at, long cap, std::vector<Path>& out) {
  if (prefix.num_arcs() > 0) {
    if (static_cast<long>(out.size()) >= cap) {
      throw SizeGuardError("enumerate_all_paths: path cap exceeded");
    }
    out.push_back(prefix);
  }
  if (prefix.num_arcs() >= inst.arc_limit) return;
  for (int a : inst.out_arcs[at]) {
    const Arc& arc = inst.arcs[a];
    if (arc.kind != ArcKind::FirstLayer || visited[arc.head]) continue;
    visited[arc.head] = 1;
    prefix.arc_ids.push_back(a);
    prefix.node_seq.push_back(arc.head);
    prefix.length += arc.length;
    dfs_paths(inst, prefix, visited, arc.head, cap, out);
    prefix.length -= arc.length;
    prefix.node_seq.pop_back();
    prefix.arc_ids.pop_back();
    visited[arc.head] = 0;
  }
}

}  // namespace

std::vector<Path> enumerate_all_paths(const Instance& inst, long path_cap) {
  std::vector<Path> out;
  Path prefix;
  std::vector<char> visited(inst.num_nodes(), 0);
  dfs_paths(inst, prefix, visited, Instance::kOrigin, path_cap, out);
  return out;
}

Solution solve_exact(const Instance& inst, const OracleLimits& limits) {
  std::vector<Path> paths = enumerate_all_paths(inst, limits.path_cap);
  long column_count = static_cast<long>(paths.size()) * inst.num_vehicle_types();
  if (column_count > limits.path_cap) {
    throw SizeGuardError("solve_exact: column cap exceeded");
  }

  std::vector<Column> columns;
  columns.reserve(column_count);
  for (const Path& p : paths) {
    for (const VehicleType& k : inst.fleet) columns.push_back(Column{p, k.id});
  }
  columns = dedup_columns(std::move(columns));

  RmpModel rmp = build_rmp(inst, columns);
  append_vehicle_cover_rows(inst, rmp);
  MipLimits mip_limits;
  mip_limits.time_limit_s = limits.time_limit_s;
  MipResult res = solve_mip(rmp.model, mip_limits);
  if (!res.has_incumbent) {
    throw std::runtime_error(std::string("solve_exact: no incumbent, status ") +
                             to_string(res.status));
  }

  Solution solution = extract_solution(inst, rmp, res.incumbent);
  solution.stats.status = res.status == MipStatus::Optimal ? SolveStatus::Optimal
                                                           : SolveStatus::TimeLimit;
  solution.stats.exact = res.status == MipStatus::Optimal;
  solution.stats.lb = res.best_bound;
  solution.stats.ub = solution.objective;
  solution.stats.gap = res.status == MipStatus::Optimal ? 0.0 : res.gap;
  solution.stats.columns_generated = static_cast<long>(columns.size());
  solution.stats.nodes_explored = res.nodes_explored;
  audit_solution(inst, solution);
  return solution;
}

}  // namespace lpstcn
