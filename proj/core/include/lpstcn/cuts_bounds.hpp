#pragma once

#include <optional>
#include <vector>

#include "lpstcn/graph.hpp"
#include "lpstcn/master.hpp"

namespace lpstcn {

/// Per-destination vehicle-count cut: at least ceil(d_i / q*) vehicles must
/// run paths through node i, with q* the largest capacity in the fleet.
struct CapacityCut {
  int destination = 0;              // first-layer node index
  std::vector<int> column_indices;  // columns whose path visits the node
  long rhs = 0;
};

/// One cut per first-layer node with positive demand, over the given column
/// set. Valid for any feasible solution, so adding them never changes the
/// optimum.
std::vector<CapacityCut> rounded_capacity_cuts(const Instance& inst,
                                               const std::vector<Column>& columns);

/// Appends the cuts to an already built master model as >= rows.
void apply_capacity_cuts(RmpModel& rmp, const std::vector<CapacityCut>& cuts);

struct ColumnBound {
  int column_index = 0;
  long upper = 0;
};

/// Upper bound 1 on every column whose path has two or more arcs. Only valid
/// when the origin reaches every first-layer node directly and arc lengths
/// satisfy the triangle inequality; returns nothing when the triangle check
/// fails.
std::vector<ColumnBound> multi_arc_upper_bounds(const Instance& inst,
                                                const std::vector<Column>& columns);

/// Smallest vehicle count u >= 1 of type k that a mix of strictly larger
/// types can replace at no extra cost and no less capacity. Columns on
/// single-arc paths of type k never need more than this many vehicles in
/// some optimal solution. Returns nullopt when no replacement mix exists or
/// k is the largest type. Depends only on the fleet.
std::optional<long> single_arc_bound(const std::vector<VehicleType>& fleet, int k);

/// Thm-style bounds for single-arc columns of every non-largest type,
/// computed once per fleet via single_arc_bound.
std::vector<ColumnBound> single_arc_upper_bounds(const Instance& inst,
                                                 const std::vector<Column>& columns);

/// Tightens y variable bounds in the model. Bounds never drop below 1, so a
/// feasible model stays feasible.
void apply_column_bounds(RmpModel& rmp, const std::vector<ColumnBound>& bounds);

}  // namespace lpstcn
