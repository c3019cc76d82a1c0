#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <optional>

#include "lpstcn/cuts_bounds.hpp"
#include "lpstcn/oracle.hpp"
#include "lpstcn/pricing.hpp"
#include "lpstcn/solver.hpp"
#include "test_support.hpp"

using namespace lpstcn;
using namespace lpstcn::test;

namespace {

// Reference search for the replacement count: smallest u in [1,10] admitting
// integer counts v in [0,10] of strictly larger types with total cost within
// c_k u and total capacity at least q_k u.
std::optional<long> brute_single_arc_bound(const std::vector<VehicleType>& fleet,
                                           int k) {
  const int K = static_cast<int>(fleet.size());
  if (k < 1 || k >= K) return std::nullopt;
  const VehicleType& base = fleet[k - 1];
  const int larger = K - k;
  for (long u = 1; u <= 10; ++u) {
    std::vector<long> v(larger, 0);
    for (;;) {
      double cost = 0.0, cap = 0.0;
      for (int i = 0; i < larger; ++i) {
        cost += fleet[k + i].unit_cost * static_cast<double>(v[i]);
        cap += fleet[k + i].capacity * static_cast<double>(v[i]);
      }
      if (cost <= base.unit_cost * static_cast<double>(u) + 1e-9 &&
          cap >= base.capacity * static_cast<double>(u) - 1e-9 && cap > 0) {
        return u;
      }
      int idx = 0;
      while (idx < larger && ++v[idx] > 10) v[idx++] = 0;
      if (idx == larger) break;
    }
  }
  return std::nullopt;
}

Instance triangle_violator() {
  RawInstance raw;
  raw.origin = "o";
  raw.nodes = {{"a", 1, 30.0, std::nullopt}, {"b", 1, 40.0, std::nullopt}};
  raw.arcs = {{"o", "a", 10.0, std::nullopt},
              {"a", "b", 10.0, std::nullopt},
              {"o", "b", 100.0, std::nullopt}};
  raw.fleet = default_fleet();
  raw.arc_limit = 3;
  return validate_or_throw(raw);
}

}  // namespace

TEST_CASE("cut right-hand sides use the ceiling of demand over q*") {
  RawInstance raw = t1_raw();
  raw.nodes[0].demand = 100.0;
  raw.nodes[1].demand = 351.0;
  Instance inst = validate_or_throw(raw);
  std::vector<Column> columns = initial_columns(inst);
  std::vector<CapacityCut> cuts = rounded_capacity_cuts(inst, columns);
  REQUIRE(cuts.size() == 2);
  CHECK(cuts[0].rhs == 1);  // ceil(100/175)
  CHECK(cuts[1].rhs == 3);  // ceil(351/175)
  for (const CapacityCut& cut : cuts) {
    for (int j : cut.column_indices) {
      CHECK(columns[j].path.visits(cut.destination));
    }
  }
}

TEST_CASE("zero-demand nodes get no cut") {
  Instance inst = t1_zero_z();
  std::vector<CapacityCut> cuts = rounded_capacity_cuts(inst, initial_columns(inst));
  CHECK(cuts.size() == 2);  // a and b only; z has no cut and no first-layer role
}

TEST_CASE("cuts keep the t1 optimum at 940") {
  Instance inst = t1();
  std::vector<Column> columns;
  for (const Path& p : enumerate_all_paths(inst)) {
    for (const VehicleType& k : inst.fleet) columns.push_back(Column{p, k.id});
  }
  columns = dedup_columns(std::move(columns));
  RmpModel rmp = build_rmp(inst, columns);
  apply_capacity_cuts(rmp, rounded_capacity_cuts(inst, columns));
  MipResult mip = solve_mip(rmp.model);
  REQUIRE(mip.status == MipStatus::Optimal);
  CHECK(mip.objective == doctest::Approx(940.0));
}

TEST_CASE("multi-arc bounds emit one per long path") {
  Instance inst = t1();
  std::vector<Column> columns;
  columns.push_back(Column{path_of(inst, {"a"}), 1});
  columns.push_back(Column{path_of(inst, {"a", "b"}), 2});
  columns.push_back(Column{path_of(inst, {"b", "a"}), 4});
  std::vector<ColumnBound> bounds = multi_arc_upper_bounds(inst, columns);
  REQUIRE(bounds.size() == 2);
  CHECK(bounds[0].column_index == 1);
  CHECK(bounds[0].upper == 1);
  CHECK(bounds[1].column_index == 2);
}

TEST_CASE("triangle violation turns the multi-arc bounds off") {
  Instance inst = triangle_violator();
  std::vector<Column> columns;
  for (const Path& p : enumerate_all_paths(inst)) {
    for (const VehicleType& k : inst.fleet) columns.push_back(Column{p, k.id});
  }
  CHECK(multi_arc_upper_bounds(inst, dedup_columns(columns)).empty());

  // The guarded pipeline still matches the oracle on such an instance.
  Solution staged = solve(inst);
  Solution exact = solve_exact(inst);
  CHECK(close(staged.objective, exact.objective));
}

TEST_CASE("replacement bounds match brute force on the default fleet") {
  std::vector<VehicleType> fleet = default_fleet();
  for (int k = 1; k <= 3; ++k) {
    std::optional<long> fast = single_arc_bound(fleet, k);
    std::optional<long> truth = brute_single_arc_bound(fleet, k);
    REQUIRE(fast.has_value());
    REQUIRE(truth.has_value());
    CHECK(*fast == *truth);
  }
  CHECK(*single_arc_bound(fleet, 1) == 2);
  CHECK(!single_arc_bound(fleet, 4).has_value());  // largest type
}

TEST_CASE("single-type fleet has no replacement bounds") {
  std::vector<VehicleType> fleet{{1, 100.0, 5.0}};
  CHECK(!single_arc_bound(fleet, 1).has_value());
}

TEST_CASE("no replacement mix means no bound") {
  // The larger type is so expensive that no mix stays within cost.
  std::vector<VehicleType> fleet{{1, 65.0, 4.1}, {2, 66.0, 1000.0}};
  CHECK(!single_arc_bound(fleet, 1).has_value());
}

TEST_CASE("bound application respects the floor of one") {
  Instance inst = t1();
  std::vector<Column> columns = initial_columns(inst);
  RmpModel rmp = build_rmp(inst, columns);
  apply_column_bounds(rmp, {{0, 0}});  // never tightened below 1
  CHECK(rmp.model.vars[0].ub == doctest::Approx(1.0));
}

TEST_CASE("bounds leave the t1 pipeline objective unchanged") {
  Instance inst = t1();
  SolveConfig with, without;
  without.use_bounds = false;
  CHECK(solve(inst, with).objective == doctest::Approx(solve(inst, without).objective));
  CHECK(solve(inst, with).objective == doctest::Approx(940.0));
}

TEST_CASE("single-arc bounds only apply to single-arc columns of small types") {
  Instance inst = t1();
  std::vector<Column> columns;
  columns.push_back(Column{path_of(inst, {"a"}), 1});       // bounded
  columns.push_back(Column{path_of(inst, {"a"}), 4});       // largest type: no bound
  columns.push_back(Column{path_of(inst, {"a", "b"}), 1});  // multi-arc: not here
  std::vector<ColumnBound> bounds = single_arc_upper_bounds(inst, columns);
  REQUIRE(bounds.size() == 1);
  CHECK(bounds[0].column_index == 0);
  CHECK(bounds[0].upper == 2);
}
