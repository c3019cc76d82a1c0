#include "lpstcn/master.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <cstdlib>

namespace lpstcn {

bool column_less(const Column& a, const Column& b) {
  if (a.path.node_seq != b.path.node_seq) return a.path.node_seq < b.path.node_seq;
  return a.vehicle < b.vehicle;
}

bool column_equal(const Column& a, const Column& b) {
  return a.path.node_seq == b.path.node_seq && a.vehicle == b.vehicle;
}

std::vector<Column> dedup_columns(std::vector<Column> columns) {
  std::sort(columns.begin(), columns.end(), column_less);
  columns.erase(std::unique(columns.begin(), columns.end(), column_equal),
                columns.end());
  return columns;
}

RmpModel build_rmp(const Instance& inst, const std::vector<Column>& columns) {
  RmpModel rmp;
  rmp.columns = columns;
  LinearModel& model = rmp.model;

  // y variables, integer >= 0, cost c_k * path length.
  for (const Column& col : columns) {
    if (!path_is_valid(inst, col.path)) {
      throw std::invalid_argument("build_rmp: column path invalid for this instance");
    }
    const VehicleType& k = inst.vehicle(col.vehicle);
    model.add_variable(0.0, kLpInfinity, k.unit_cost * col.path.length, true);
  }
  // x variables, continuous >= 0; only cross-layer flow is costed.
  rmp.x_var.resize(inst.num_arcs());
  for (int a = 0; a < inst.num_arcs(); ++a) {
    const Arc& arc = inst.arcs[a];
    double cost = arc.kind == ArcKind::CrossLayer ? arc.outsource_rate * arc.length : 0.0;
    rmp.x_var[a] = model.add_variable(0.0, kLpInfinity, cost, false);
  }

  // Flow conservation: sum(out) - sum(in) = w_i with w_o the total demand
  // and w_i = -d_i at destinations.
  rmp.flow_row.resize(inst.num_nodes());
  for (int v = 0; v < inst.num_nodes(); ++v) {
    std::vector<std::pair<int, double>> coeffs;
    for (int a : inst.out_arcs[v]) coeffs.push_back({rmp.x_var[a], 1.0});
    for (int a : inst.in_arcs[v]) coeffs.push_back({rmp.x_var[a], -1.0});
    double w = inst.is_origin(v) ? inst.total_demand : -inst.demand(v);
    rmp.flow_row[v] = model.add_row(RowSense::Equal, w, std::move(coeffs));
  }

  // Capacity per first-layer arc: sum over columns through the arc of
  // q_k y minus the flow is nonnegative.
  rmp.capacity_row.assign(inst.num_arcs(), -1);
  std::vector<std::vector<std::pair<int, double>>> cap_coeffs(inst.num_arcs());
  for (int j = 0; j < rmp.num_y(); ++j) {
    const Column& col = columns[j];
    double q = inst.vehicle(col.vehicle).capacity;
    for (int a : col.path.arc_ids) cap_coeffs[a].push_back({j, q});
  }
  for (int a = 0; a < inst.num_arcs(); ++a) {
    if (inst.arcs[a].kind != ArcKind::FirstLayer) continue;
    cap_coeffs[a].push_back({rmp.x_var[a], -1.0});
    rmp.capacity_row[a] = model.add_row(RowSense::GreaterEqual, 0.0,
                                        std::move(cap_coeffs[a]));
  }
  return rmp;
}

namespace {

// Facets pi.z >= 1 of conv{z integer >= 0 : q.z >= b}, the per-destination
// vehicle-count hull in aggregated type space. The minimal cover points are
// few at fleet scale, so the facets fall out of the polar polyhedron
// {pi >= 0 : pi.m >= 1 for every minimal cover m} by vertex enumeration.
// Memoized per (q, b); returns nothing when the enumeration would be large.
std::vector<std::vector<double>> cover_hull_facets(const std::vector<double>& q,
                                                   double b) {
  const int K = static_cast<int>(q.size());
  if (K < 2 || K > 5 || b <= 0) return {};

  static std::map<std::pair<std::vector<double>, double>,
                  std::vector<std::vector<double>>>
      cache;
  static std::mutex cache_mutex;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find({q, b});
    if (it != cache.end()) return it->second;
  }

  // Minimal covers: q.z >= b and no coordinate can decrement.
  std::vector<std::vector<double>> covers;
  std::vector<long> z(K, 0), box(K);
  long box_size = 1;
  for (int k = 0; k < K; ++k) {
    box[k] = static_cast<long>(std::ceil(b / q[k] - 1e-9));
    box_size *= box[k] + 1;
  }
  bool tractable = box_size <= 2000000;
  if (tractable) {
    for (;;) {
      double cap = 0.0;
      for (int k = 0; k < K; ++k) cap += q[k] * static_cast<double>(z[k]);
      if (cap >= b) {
        bool minimal = true;
        for (int k = 0; k < K && minimal; ++k) {
          if (z[k] > 0 && cap - q[k] >= b) minimal = false;
        }
        if (minimal) covers.push_back(std::vector<double>(z.begin(), z.end()));
      }
      int idx = 0;
      while (idx < K && ++z[idx] > box[idx]) z[idx++] = 0;
      if (idx == K) break;
      if (covers.size() > 48) {
        tractable = false;
        break;
      }
    }
  }

  std::vector<std::vector<double>> facets;
  if (tractable && !covers.empty()) {
    // Constraint pool: cover rows then the nonnegativity bounds.
    const int pool = static_cast<int>(covers.size()) + K;
    std::vector<int> pick(K);
    for (int k = 0; k < K; ++k) pick[k] = k;
    for (;;) {
      std::vector<std::vector<double>> a(K, std::vector<double>(K, 0.0));
      std::vector<double> rhs(K, 0.0);
      for (int r = 0; r < K; ++r) {
        if (pick[r] < static_cast<int>(covers.size())) {
          a[r] = covers[pick[r]];
          rhs[r] = 1.0;
        } else {
          a[r][pick[r] - covers.size()] = 1.0;
        }
      }
      // Gaussian solve; singular subsets are skipped.
      bool ok = true;
      for (int col = 0; col < K && ok; ++col) {
        int piv = -1;
        double mag = 1e-9;
        for (int r = col; r < K; ++r) {
          if (std::abs(a[r][col]) > mag) {
            mag = std::abs(a[r][col]);
            piv = r;
          }
        }
        if (piv < 0) {
          ok = false;
          break;
        }
        std::swap(a[piv], a[col]);
        std::swap(rhs[piv], rhs[col]);
        for (int r = 0; r < K; ++r) {
          if (r == col) continue;
          double f = a[r][col] / a[col][col];
          if (f == 0.0) continue;
          for (int c2 = col; c2 < K; ++c2) a[r][c2] -= f * a[col][c2];
          rhs[r] -= f * rhs[col];
        }
      }
      if (ok) {
        std::vector<double> pi(K);
        for (int k = 0; k < K; ++k) pi[k] = rhs[k] / a[k][k];
        bool feasible = true;
        for (int k = 0; k < K && feasible; ++k) feasible = pi[k] >= -1e-9;
        for (const auto& m : covers) {
          if (!feasible) break;
          double dot = 0.0;
          for (int k = 0; k < K; ++k) dot += pi[k] * m[k];
          feasible = dot >= 1.0 - 1e-9;
        }
        if (feasible) {
          for (int k = 0; k < K; ++k) pi[k] = std::max(pi[k], 0.0);
          facets.push_back(std::move(pi));
        }
      }
      int idx = K - 1;
      while (idx >= 0 && pick[idx] == pool - K + idx) --idx;
      if (idx < 0) break;
      ++pick[idx];
      for (int r = idx + 1; r < K; ++r) pick[r] = pick[r - 1] + 1;
    }
    std::sort(facets.begin(), facets.end());
    facets.erase(std::unique(facets.begin(), facets.end(),
                             [](const auto& x, const auto& y) {
                               for (std::size_t k = 0; k < x.size(); ++k) {
                                 if (std::abs(x[k] - y[k]) > 1e-9) return false;
                               }
                               return true;
                             }),
                 facets.end());
  }

  std::lock_guard<std::mutex> lock(cache_mutex);
  cache[{q, b}] = facets;
  return facets;
}

// Hub load structure: vehicles through hub i carry its own demand plus the
// flow W it forwards on cross arcs, so sum(q_k y) - W >= d_i, with W bounded
// by the second-layer demand U reachable from i. Mixed-integer rounding of
// that row per capacity divisor forces whole vehicles at loaded hubs, which
// plain per-demand rows cannot see. For Sum(mu_j z_j) - w >= beta with
// w in [0, U/delta], substituting w's complement gives the MIR inequality
//   sum(phi(mu_j) z_j) + (U/delta - w) / frac(B) >= ceil(B),  B = beta + U/delta
// with phi the usual MIR rounding of mu against frac(B).
void append_hub_load_rows(const Instance& inst, RmpModel& rmp, int hub) {
  std::vector<int> cross_out;
  double reachable = 0.0;
  for (int a : inst.out_arcs[hub]) {
    if (inst.arcs[a].kind != ArcKind::CrossLayer) continue;
    cross_out.push_back(a);
    reachable += inst.demand(inst.arcs[a].head);
  }
  if (cross_out.empty() || reachable <= 0) return;

  std::vector<int> through;
  for (int j = 0; j < rmp.num_y(); ++j) {
    if (rmp.columns[j].path.visits(hub)) through.push_back(j);
  }

  // The mixed load row itself; implied by flow conservation and capacity,
  // stated directly so tableau cuts can work with it.
  {
    std::vector<std::pair<int, double>> coeffs;
    for (int j : through) {
      coeffs.push_back({j, inst.vehicle(rmp.columns[j].vehicle).capacity});
    }
    for (int a : cross_out) coeffs.push_back({rmp.x_var[a], -1.0});
    rmp.model.add_row(RowSense::GreaterEqual, inst.demand(hub), std::move(coeffs));
  }

  std::vector<double> divisors;
  for (const VehicleType& t : inst.fleet) divisors.push_back(t.capacity);
  std::sort(divisors.begin(), divisors.end());
  divisors.erase(std::unique(divisors.begin(), divisors.end()), divisors.end());
  for (double delta : divisors) {
    double big_b = (inst.demand(hub) + reachable) / delta;
    double f = big_b - std::floor(big_b);
    if (f < 0.01 || f > 0.99) continue;
    double w_coef = 1.0 / (delta * f);
    double rhs = std::ceil(big_b) - reachable * w_coef;
    if (rhs <= 1e-9) continue;  // vacuous against nonnegative flows
    std::vector<std::pair<int, double>> coeffs;
    for (int j : through) {
      double mu = inst.vehicle(rmp.columns[j].vehicle).capacity / delta;
      double fj = mu - std::floor(mu);
      double phi = fj <= f + 1e-12 ? std::floor(mu) + fj / f : std::ceil(mu);
      if (phi > 0) coeffs.push_back({j, phi});
    }
    for (int a : cross_out) coeffs.push_back({rmp.x_var[a], -w_coef});
    rmp.model.add_row(RowSense::GreaterEqual, rhs, std::move(coeffs));
  }
}

// One row per first-layer node set S: deliveries whose final vehicle arc
// lands in S are bounded by q_k per such arc of each column, at most
// |path nodes in S| arcs per column, and must cover the demand inside S
// plus every second-layer demand whose in-neighbors all lie in S.
void add_cover_row(const Instance& inst, RmpModel& rmp, const std::vector<int>& set) {
  std::vector<char> in_set(inst.num_nodes(), 0);
  for (int v : set) in_set[v] = 1;

  double rhs = 0.0;
  for (int v : set) rhs += inst.demand(v);
  for (int j : inst.second_layer) {
    if (inst.demand(j) <= 0 || inst.in_arcs[j].empty()) continue;
    bool contained = true;
    for (int a : inst.in_arcs[j]) contained = contained && in_set[inst.arcs[a].tail];
    if (contained) rhs += inst.demand(j);
  }
  if (rhs <= 0) return;

  std::vector<std::pair<int, double>> coeffs;
  for (int j = 0; j < rmp.num_y(); ++j) {
    int hits = 0;
    for (int v : rmp.columns[j].path.node_seq) hits += in_set[v];
    if (hits > 0) {
      coeffs.push_back(
          {j, inst.vehicle(rmp.columns[j].vehicle).capacity * hits});
    }
  }
  rmp.model.add_row(RowSense::GreaterEqual, rhs, std::move(coeffs));

  // For a single destination the aggregated type counts live in a small
  // knapsack-cover set whose exact hull facets are enumerable; stating them
  // here removes the per-destination integrality gap from the relaxation.
  if (set.size() != 1) return;
  if (std::getenv("LPSTCN_NO_HULL")) return;
  std::vector<double> q;
  for (const VehicleType& t : inst.fleet) q.push_back(t.capacity);
  for (const std::vector<double>& pi : cover_hull_facets(q, rhs)) {
    std::vector<std::pair<int, double>> fc;
    for (int j = 0; j < rmp.num_y(); ++j) {
      if (!rmp.columns[j].path.visits(set[0])) continue;
      double c = pi[rmp.columns[j].vehicle - 1];
      if (c > 0) fc.push_back({j, c});
    }
    if (!fc.empty()) rmp.model.add_row(RowSense::GreaterEqual, 1.0, std::move(fc));
  }
  append_hub_load_rows(inst, rmp, set[0]);
}

}  // namespace

void append_vehicle_cover_rows(const Instance& inst, RmpModel& rmp) {
  std::vector<std::vector<int>> sets;
  for (int v : inst.first_layer) sets.push_back({v});
  for (int j : inst.second_layer) {
    std::vector<int> hubs;
    for (int a : inst.in_arcs[j]) hubs.push_back(inst.arcs[a].tail);
    std::sort(hubs.begin(), hubs.end());
    hubs.erase(std::unique(hubs.begin(), hubs.end()), hubs.end());
    if (hubs.size() >= 2) sets.push_back(std::move(hubs));
  }
  sets.push_back(inst.first_layer);
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  for (const std::vector<int>& set : sets) add_cover_row(inst, rmp, set);
}

DualSolution extract_duals(const RmpModel& rmp, const LpResult& lp) {
  if (lp.status != LpStatus::Optimal) {
    throw StatusNotOptimal("extract_duals: LP status is not Optimal");
  }
  DualSolution duals;
  duals.pi.assign(rmp.capacity_row.size(), 0.0);
  for (std::size_t a = 0; a < rmp.capacity_row.size(); ++a) {
    int row = rmp.capacity_row[a];
    if (row < 0) continue;
    double pi = lp.duals[row];
    if (pi < 0 && pi > -1e-9) pi = 0.0;
    duals.pi[a] = std::max(pi, 0.0);
  }
  return duals;
}

}  // namespace lpstcn
