#pragma once

#include <stdexcept>
#include <vector>

#include "lpstcn/graph.hpp"
#include "lpstcn/linear_model.hpp"

namespace lpstcn {

/// One master variable: a first-layer path driven by one vehicle type.
struct Column {
  Path path;
  int vehicle = 0;  // vehicle type id (1-based)
};

/// Canonical column order: path node sequence, then vehicle id.
bool column_less(const Column& a, const Column& b);
bool column_equal(const Column& a, const Column& b);

/// Sorts canonically and drops duplicate (path, vehicle) pairs.
std::vector<Column> dedup_columns(std::vector<Column> columns);

/// Dual values of the first-layer capacity rows, indexed by arc id.
/// Entries of non-first-layer arcs are zero. Nonnegative at an optimum
/// because capacity rows are >= rows of a minimization.
struct DualSolution {
  std::vector<double> pi;
  double operator[](int arc) const { return pi[arc]; }
};

/// Restricted master model over a column set: one integer vehicle-count
/// variable per column, one flow variable per arc, flow conservation per
/// node (origin included) and one capacity row per first-layer arc written
/// as sum(q_k y) - x_a >= 0 so capacity duals come out nonnegative.
struct RmpModel {
  LinearModel model;
  std::vector<Column> columns;     // y variable j corresponds to columns[j]
  std::vector<int> x_var;          // arc id -> variable id
  std::vector<int> flow_row;       // node index -> row id
  std::vector<int> capacity_row;   // arc id -> row id, -1 off the first layer
  int num_y() const { return static_cast<int>(columns.size()); }
};

/// Builds the restricted master over the given columns. Demands are met with
/// equality; cross-layer flows carry the outsourcing cost and no capacity
/// row. Throws std::invalid_argument when a column references an arc that is
/// not part of the instance.
RmpModel build_rmp(const Instance& inst, const std::vector<Column>& columns);

/// Appends one implied row per positive-demand first-layer node: the total
/// capacity of vehicles routed through the node covers its demand,
/// sum over columns visiting i of q_k y >= d_i. Implied by flow conservation
/// and the arc capacity rows, so the LP value is untouched; stated on the
/// integer variables alone it gives the integer solver rows it can round.
/// Intended for models headed to solve_mip, never for the pricing LP.
void append_vehicle_cover_rows(const Instance& inst, RmpModel& rmp);

struct StatusNotOptimal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Reads the capacity-row duals out of an optimal LP result, clamping
/// negatives within 1e-9 to zero. Throws StatusNotOptimal otherwise.
DualSolution extract_duals(const RmpModel& rmp, const LpResult& lp);

}  // namespace lpstcn
