#pragma once

#include <cstdint>
#include <vector>

#include "lpstcn/graph.hpp"
#include "lpstcn/master.hpp"

namespace lpstcn {

/// Reduced cost of running one type-k vehicle on the path:
/// sum over its arcs of (c_k * l_a - q_k * pi_a).
double reduced_cost(const Instance& inst, const Path& path, int vehicle_id,
                    const DualSolution& duals);

/// The direct path (o, i) for every first-layer node, paired with every
/// vehicle type. Guaranteed to exist and to make the master LP feasible.
std::vector<Column> initial_columns(const Instance& inst);

/// Pricing label: partial path state of the dynamic program.
struct Label {
  int node = 0;
  double reduced_cost = 0.0;
  double length = 0.0;
  int num_arcs = 0;
  std::uint64_t visited = 0;  // bitmask over first-layer ranks
  int pred_label = -1;
  int pred_arc = -1;
};

/// True when `a` dominates `b`: same end node, visited set of `a` contained
/// in `b`'s, and reduced cost, length and arc count all no worse.
bool label_dominates(const Label& a, const Label& b);

/// Labeling pricer for one vehicle type. Extends labels from the origin to
/// unvisited first-layer nodes up to the arc limit, prunes by dominance
/// (an earlier label wins exact ties) and returns every surviving label with
/// reduced cost below -eps as a column. Deterministic.
std::vector<Column> price_columns(const Instance& inst, const DualSolution& duals,
                                  int vehicle_id, double eps,
                                  bool use_dominance = true);

struct CgOutcome {
  double lower_bound = 0.0;      // LP value of the final restricted master
  std::vector<Column> columns;   // canonical order
  DualSolution duals;            // from the final LP
  long iterations = 0;
};

/// Column generation: alternates master LP solves with per-type pricing,
/// adding every negative-reduced-cost column found, until no type prices
/// out. The final LP value is a valid lower bound for the integer model.
CgOutcome run_column_generation(const Instance& inst, double eps = 1e-6);

}  // namespace lpstcn
