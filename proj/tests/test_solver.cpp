#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lpstcn/oracle.hpp"
#include "lpstcn/solver.hpp"
#include "test_support.hpp"

using namespace lpstcn;
using namespace lpstcn::test;

TEST_CASE("t1 solves to 940 with the documented bounds") {
  Instance inst = t1();
  Solution s = solve(inst);
  CHECK(s.stats.status == SolveStatus::Optimal);
  CHECK(s.stats.exact);
  CHECK(s.objective == doctest::Approx(940.0));
  CHECK(s.stats.lb == doctest::Approx(548.5714).epsilon(2e-5));
  CHECK(s.stats.ub == doctest::Approx(940.0));
  CHECK(s.first_layer_cost == doctest::Approx(820.0));
  CHECK(s.outsourcing_cost == doctest::Approx(120.0));

  // Two type-1 vehicles on the direct arcs, z outsourced via a.
  REQUIRE(s.vehicle_plan.size() == 2);
  for (const auto& [col, count] : s.vehicle_plan) {
    CHECK(col.vehicle == 1);
    CHECK(col.path.num_arcs() == 1);
    CHECK(count == 1);
  }
  int az = inst.find_arc(node_index(inst, "a"), node_index(inst, "z"));
  CHECK(s.flows[az] == doctest::Approx(10.0));
}

TEST_CASE("dropping the outsourced demand enables consolidation") {
  // With d_z = 0 the 90 m^3 of a and b fit one type-2 vehicle on (o,a,b):
  // 4.7 * 160 = 752. Verified against the brute-force oracle.
  Instance inst = t1_zero_z();
  Solution exact = solve_exact(inst);
  CHECK(exact.objective == doctest::Approx(752.0));
  Solution s = solve(inst);
  CHECK(s.objective == doctest::Approx(752.0));
  CHECK(s.outsourcing_cost == doctest::Approx(0.0));
}

TEST_CASE("repeat solves are identical apart from timings") {
  Instance inst = t1();
  Solution a = solve(inst);
  Solution b = solve(inst);
  CHECK(a.objective == b.objective);
  CHECK(a.stats.lb == b.stats.lb);
  CHECK(a.stats.ub == b.stats.ub);
  CHECK(a.stats.cg_iterations == b.stats.cg_iterations);
  CHECK(a.stats.columns_generated == b.stats.columns_generated);
  CHECK(a.stats.columns_enumerated == b.stats.columns_enumerated);
  CHECK(a.stats.nodes_explored == b.stats.nodes_explored);
  CHECK(a.flows == b.flows);
  REQUIRE(a.vehicle_plan.size() == b.vehicle_plan.size());
  for (std::size_t i = 0; i < a.vehicle_plan.size(); ++i) {
    CHECK(column_equal(a.vehicle_plan[i].first, b.vehicle_plan[i].first));
    CHECK(a.vehicle_plan[i].second == b.vehicle_plan[i].second);
  }
}

TEST_CASE("staged solver matches the oracle on random instances") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    Instance inst = small_random(seed);
    Solution staged = solve(inst);
    Solution exact = solve_exact(inst);
    CHECK(close(staged.objective, exact.objective, 1e-6));
    CHECK(staged.stats.status == SolveStatus::Optimal);
    // Sandwich property.
    CHECK(staged.stats.lb <= staged.objective + 1e-6 * std::max(1.0, staged.objective));
    CHECK(staged.objective <= staged.stats.ub + 1e-6 * std::max(1.0, staged.stats.ub));
  }
}

TEST_CASE("audit accepts solver output and rejects corrupted plans") {
  Instance inst = t1();
  Solution s = solve(inst);
  audit_solution(inst, s);  // must not throw

  Solution broken = s;
  broken.flows[0] += 5.0;  // violates conservation at the origin
  CHECK_THROWS_AS(audit_solution(inst, broken), std::logic_error);

  Solution wrong_obj = s;
  wrong_obj.objective += 1.0;
  CHECK_THROWS_AS(audit_solution(inst, wrong_obj), std::logic_error);

  Solution over_capacity = s;
  over_capacity.vehicle_plan.clear();  // flows now exceed zero capacity
  CHECK_THROWS_AS(audit_solution(inst, over_capacity), std::logic_error);
}

TEST_CASE("flows decompose into demand-covering paths") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Instance inst = small_random(seed);
    Solution s = solve(inst);
    CHECK(check_flow_decomposition(inst, s.flows));
  }
  Instance inst = t1();
  std::vector<double> bogus(inst.num_arcs(), 0.0);
  CHECK(!check_flow_decomposition(inst, bogus));  // demand uncovered
}

TEST_CASE("toggles keep the objective, enumeration off may lose exactness") {
  for (std::uint64_t seed : {3ull, 9ull, 14ull}) {
    Instance inst = small_random(seed);
    Solution reference = solve(inst);
    for (bool cuts : {false, true}) {
      for (bool bounds : {false, true}) {
        SolveConfig config;
        config.use_cuts = cuts;
        config.use_bounds = bounds;
        Solution s = solve(inst, config);
        CHECK(close(s.objective, reference.objective, 1e-6));
      }
    }
    SolveConfig heuristic;
    heuristic.use_enumeration = false;
    Solution h = solve(inst, heuristic);
    CHECK(!h.stats.exact);
    CHECK(h.objective + 1e-6 >= reference.objective);  // restricted model
    CHECK(h.stats.columns_enumerated == 0);
  }
}

TEST_CASE("arc limit override changes the path universe") {
  Instance inst = t1();
  SolveConfig config;
  config.arc_limit_override = 1;  // direct paths only
  Solution s = solve(inst, config);
  // Direct-only optimum: same 940 (the t1 optimum uses direct paths anyway).
  CHECK(s.objective == doctest::Approx(940.0));
  for (const auto& [col, count] : s.vehicle_plan) CHECK(col.path.num_arcs() == 1);
}

TEST_CASE("time limit zero still returns an audited plan") {
  Instance inst = small_random(4);
  SolveConfig config;
  config.time_limit_s = 0.0;
  Solution s = solve(inst, config);
  audit_solution(inst, s);
  CHECK(s.objective > 0.0);
  if (s.stats.status == SolveStatus::TimeLimit) {
    CHECK(s.stats.gap >= 0.0);
  }
}

TEST_CASE("zero demand everywhere yields the empty optimum") {
  RawInstance raw = t1_raw();
  for (RawNode& n : raw.nodes) n.demand = 0.0;
  Instance inst = validate_or_throw(raw);
  Solution s = solve(inst);
  CHECK(s.objective == doctest::Approx(0.0));
  CHECK(s.vehicle_plan.empty());
  CHECK(s.stats.status == SolveStatus::Optimal);
}
