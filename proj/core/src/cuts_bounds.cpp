#include "lpstcn/cuts_bounds.hpp"

#include <algorithm>
#include <cmath>

#include "lpstcn/linear_model.hpp"

namespace lpstcn {

std::vector<CapacityCut> rounded_capacity_cuts(const Instance& inst,
                                               const std::vector<Column>& columns) {
  const double q_max = inst.max_capacity();
  std::vector<CapacityCut> cuts;
  for (int v : inst.first_layer) {
    if (inst.demand(v) <= 0) continue;
    CapacityCut cut;
    cut.destination = v;
    cut.rhs = static_cast<long>(std::ceil(inst.demand(v) / q_max - 1e-9));
    for (int j = 0; j < static_cast<int>(columns.size()); ++j) {
      if (columns[j].path.visits(v)) cut.column_indices.push_back(j);
    }
    cuts.push_back(std::move(cut));
  }
  return cuts;
}

void apply_capacity_cuts(RmpModel& rmp, const std::vector<CapacityCut>& cuts) {
  for (const CapacityCut& cut : cuts) {
    std::vector<std::pair<int, double>> coeffs;
    coeffs.reserve(cut.column_indices.size());
    for (int j : cut.column_indices) coeffs.push_back({j, 1.0});
    rmp.model.add_row(RowSense::GreaterEqual, static_cast<double>(cut.rhs),
                      std::move(coeffs));
  }
}

std::vector<ColumnBound> multi_arc_upper_bounds(const Instance& inst,
                                                const std::vector<Column>& columns) {
  if (!check_triangle(inst)) return {};  // precondition fails: no-op
  std::vector<ColumnBound> bounds;
  for (int j = 0; j < static_cast<int>(columns.size()); ++j) {
    if (columns[j].path.num_arcs() >= 2) bounds.push_back(ColumnBound{j, 1});
  }
  return bounds;
}

std::optional<long> single_arc_bound(const std::vector<VehicleType>& fleet, int k) {
  const int K = static_cast<int>(fleet.size());
  if (k < 1 || k >= K) return std::nullopt;  // the largest type has no bound
  const VehicleType& base = fleet[k - 1];

  // min u  s.t.  sum_{i>k} c_i v_i <= c_k u,  sum_{i>k} q_i v_i >= q_k u,
  // u >= 1, all integer. Scales linearly in u, so a modest cap on u is
  // enough to either find the minimum or conclude no mix exists.
  constexpr double kCap = 64.0;
  LinearModel ip;
  int u = ip.add_variable(1.0, kCap, 1.0, true);
  std::vector<std::pair<int, double>> cost_row{{u, -base.unit_cost}};
  std::vector<std::pair<int, double>> cap_row{{u, -base.capacity}};
  for (int i = k + 1; i <= K; ++i) {
    const VehicleType& t = fleet[i - 1];
    double v_cap = std::ceil(base.unit_cost * kCap / t.unit_cost);
    int v = ip.add_variable(0.0, v_cap, 0.0, true);
    cost_row.push_back({v, t.unit_cost});
    cap_row.push_back({v, t.capacity});
  }
  ip.add_row(RowSense::LessEqual, 0.0, std::move(cost_row));
  ip.add_row(RowSense::GreaterEqual, 0.0, std::move(cap_row));

  MipResult res = solve_mip(ip);
  if (res.status != MipStatus::Optimal) return std::nullopt;
  return static_cast<long>(std::llround(res.objective));
}

std::vector<ColumnBound> single_arc_upper_bounds(const Instance& inst,
                                                 const std::vector<Column>& columns) {
  const int K = inst.num_vehicle_types();
  std::vector<std::optional<long>> u_star(K + 1);
  for (int k = 1; k < K; ++k) u_star[k] = single_arc_bound(inst.fleet, k);

  std::vector<ColumnBound> bounds;
  for (int j = 0; j < static_cast<int>(columns.size()); ++j) {
    const Column& col = columns[j];
    if (col.path.num_arcs() != 1) continue;
    if (col.vehicle >= K) continue;
    if (u_star[col.vehicle].has_value()) {
      bounds.push_back(ColumnBound{j, *u_star[col.vehicle]});
    }
  }
  return bounds;
}

void apply_column_bounds(RmpModel& rmp, const std::vector<ColumnBound>& bounds) {
  for (const ColumnBound& b : bounds) {
    double& ub = rmp.model.vars[b.column_index].ub;
    ub = std::min(ub, static_cast<double>(std::max(b.upper, 1L)));
  }
}

}  // namespace lpstcn
