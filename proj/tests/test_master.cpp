#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "lpstcn/master.hpp"
#include "lpstcn/oracle.hpp"
#include "lpstcn/pricing.hpp"
#include "test_support.hpp"

using namespace lpstcn;
using namespace lpstcn::test;

namespace {

std::vector<Column> t1_initial(const Instance& inst) { return initial_columns(inst); }

}  // namespace

TEST_CASE("t1 restricted master has the expected shape") {
  Instance inst = t1();
  std::vector<Column> columns = t1_initial(inst);
  REQUIRE(columns.size() == 8);  // 2 direct paths x 4 types
  RmpModel rmp = build_rmp(inst, columns);

  CHECK(rmp.model.num_vars() == 8 + 6);  // y per column, x per arc
  int flow_rows = 0, capacity_rows = 0;
  for (int v = 0; v < inst.num_nodes(); ++v) {
    CHECK(rmp.flow_row[v] >= 0);
    ++flow_rows;
  }
  for (int a = 0; a < inst.num_arcs(); ++a) {
    if (rmp.capacity_row[a] >= 0) ++capacity_rows;
  }
  CHECK(flow_rows == 4);      // o, a, b, z
  CHECK(capacity_rows == 4);  // the four first-layer arcs
  CHECK(rmp.model.num_rows() == 8);

  // Origin flow row carries the total demand, destinations their negatives.
  CHECK(rmp.model.rows[rmp.flow_row[0]].rhs == doctest::Approx(100.0));
  CHECK(rmp.model.rows[rmp.flow_row[node_index(inst, "z")]].rhs ==
        doctest::Approx(-10.0));

  // Outsourcing cost coefficient on x(a,z) is rate * length.
  int az = inst.find_arc(node_index(inst, "a"), node_index(inst, "z"));
  CHECK(rmp.model.vars[rmp.x_var[az]].obj == doctest::Approx(12.0));
  // First-layer flow is free of direct cost.
  int oa = inst.find_arc(0, node_index(inst, "a"));
  CHECK(rmp.model.vars[rmp.x_var[oa]].obj == doctest::Approx(0.0));
  // Vehicle columns are costed at c_k * path length.
  for (std::size_t j = 0; j < columns.size(); ++j) {
    const VehicleType& k = inst.vehicle(columns[j].vehicle);
    CHECK(rmp.model.vars[j].obj ==
          doctest::Approx(k.unit_cost * columns[j].path.length));
    CHECK(rmp.model.vars[j].integer);
  }
}

TEST_CASE("empty column set leaves positive demand infeasible") {
  Instance inst = t1();
  RmpModel rmp = build_rmp(inst, {});
  CHECK(solve_lp(rmp.model).status == LpStatus::Infeasible);
}

TEST_CASE("column with a foreign arc is rejected") {
  Instance inst = t1();
  Instance other = single_node(50.0, 77.0);
  Column bad{make_path(other, {1}), 1};  // same arc id, wrong geometry
  CHECK_THROWS_AS(build_rmp(inst, {bad}), std::invalid_argument);

  Column out_of_range{Path{{99}, {1}, 100.0}, 1};
  CHECK_THROWS_AS(build_rmp(inst, {out_of_range}), std::invalid_argument);
}

TEST_CASE("t1 initial lp relaxation value and duals") {
  Instance inst = t1();
  RmpModel rmp = build_rmp(inst, t1_initial(inst));
  LpResult lp = solve_lp(rmp.model);
  REQUIRE(lp.status == LpStatus::Optimal);
  // Fractional type-4 vehicles on both direct arcs plus 120 outsourcing.
  CHECK(lp.objective == doctest::Approx(548.5714).epsilon(2e-5));

  DualSolution duals = extract_duals(rmp, lp);
  for (double pi : duals.pi) CHECK(pi >= 0.0);
  // Dual feasibility: no in-model column prices negative under these duals.
  for (const Column& col : rmp.columns) {
    CHECK(reduced_cost(inst, col.path, col.vehicle, duals) >= -1e-6);
  }
}

TEST_CASE("slack capacity row has a zero dual") {
  // Force one idle vehicle on (o,a) by a fixed lower bound; its capacity row
  // then has slack at the optimum, so complementary slackness zeroes pi.
  Instance inst = single_node(10.0);
  std::vector<Column> columns = initial_columns(inst);
  RmpModel rmp = build_rmp(inst, columns);
  // Fix the type-4 count at 1: capacity 175 >= flow 10.
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].vehicle == 4) {
      rmp.model.vars[j].lb = 1.0;
    } else {
      rmp.model.vars[j].ub = 0.0;
    }
  }
  LpResult lp = solve_lp(rmp.model);
  REQUIRE(lp.status == LpStatus::Optimal);
  DualSolution duals = extract_duals(rmp, lp);
  int oa = inst.find_arc(0, 1);
  CHECK(duals[oa] == doctest::Approx(0.0));
}

TEST_CASE("extract_duals requires an optimal lp") {
  Instance inst = t1();
  RmpModel rmp = build_rmp(inst, {});
  LpResult lp = solve_lp(rmp.model);
  CHECK_THROWS_AS(extract_duals(rmp, lp), StatusNotOptimal);
}

TEST_CASE("objective never increases as columns are added") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    Instance inst = small_random(seed);
    std::vector<Path> all_paths = enumerate_all_paths(inst);
    std::vector<Column> base = initial_columns(inst);
    RmpModel rmp = build_rmp(inst, base);
    LpResult lp = solve_lp(rmp.model);
    REQUIRE(lp.status == LpStatus::Optimal);
    double prev = lp.objective;

    std::vector<Column> grown = base;
    for (std::size_t i = 0; i < all_paths.size(); i += 3) {
      grown.push_back(Column{all_paths[i], static_cast<int>(i % 4) + 1});
      grown = dedup_columns(std::move(grown));
      LpResult next = solve_lp(build_rmp(inst, grown).model);
      REQUIRE(next.status == LpStatus::Optimal);
      CHECK(next.objective <= prev + 1e-6 * std::max(1.0, prev));
      prev = next.objective;
    }
  }
}

TEST_CASE("flow row balance sums to zero") {
  Instance inst = t1();
  RmpModel rmp = build_rmp(inst, t1_initial(inst));
  double total = 0.0;
  for (int v = 0; v < inst.num_nodes(); ++v) {
    total += rmp.model.rows[rmp.flow_row[v]].rhs;
  }
  CHECK(total == doctest::Approx(0.0));
}

TEST_CASE("dedup_columns sorts canonically and drops repeats") {
  Instance inst = t1();
  Path oa = path_of(inst, {"a"});
  Path oab = path_of(inst, {"a", "b"});
  std::vector<Column> columns{{oab, 2}, {oa, 1}, {oab, 2}, {oa, 4}, {oa, 1}};
  std::vector<Column> out = dedup_columns(columns);
  REQUIRE(out.size() == 3);
  CHECK(out[0].path.node_seq == oa.node_seq);
  CHECK(out[0].vehicle == 1);
  CHECK(out[1].vehicle == 4);
  CHECK(out[2].path.node_seq == oab.node_seq);
}
