#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <functional>

#include "lpstcn/master.hpp"
#include "lpstcn/oracle.hpp"
#include "test_support.hpp"

using namespace lpstcn;
using namespace lpstcn::test;

namespace {

// Independent check of an oracle objective: enumerate integer vehicle counts
// per column by depth-first search with a cost cutoff, solving the residual
// outsourcing/flow LP for each complete assignment.
double enumerate_plans(const Instance& inst, long max_count, double cost_cap) {
  std::vector<Column> columns;
  for (const Path& p : enumerate_all_paths(inst)) {
    for (const VehicleType& k : inst.fleet) columns.push_back(Column{p, k.id});
  }
  columns = dedup_columns(std::move(columns));
  RmpModel rmp = build_rmp(inst, columns);

  double best = kInfinity;
  std::vector<long> counts(columns.size(), 0);
  std::function<void(std::size_t, double)> dfs = [&](std::size_t idx, double spent) {
    if (spent >= std::min(best, cost_cap)) return;
    if (idx == columns.size()) {
      LinearModel fixed = rmp.model;
      for (std::size_t j = 0; j < columns.size(); ++j) {
        fixed.vars[j].lb = fixed.vars[j].ub = static_cast<double>(counts[j]);
      }
      LpResult lp = solve_lp(fixed);
      if (lp.status == LpStatus::Optimal) best = std::min(best, lp.objective);
      return;
    }
    const VehicleType& k = inst.vehicle(columns[idx].vehicle);
    double unit = k.unit_cost * columns[idx].path.length;
    for (long c = 0; c <= max_count; ++c) {
      counts[idx] = c;
      dfs(idx + 1, spent + unit * static_cast<double>(c));
    }
    counts[idx] = 0;
  };
  dfs(0, 0.0);
  return best;
}

}  // namespace

TEST_CASE("t1 has exactly the four feasible paths") {
  Instance inst = t1();
  std::vector<Path> paths = enumerate_all_paths(inst);
  REQUIRE(paths.size() == 4);
  int a = node_index(inst, "a"), b = node_index(inst, "b");
  std::vector<std::vector<int>> seqs;
  for (const Path& p : paths) seqs.push_back(p.node_seq);
  std::sort(seqs.begin(), seqs.end());
  CHECK(seqs == std::vector<std::vector<int>>{{a}, {a, b}, {b}, {b, a}});
}

TEST_CASE("star graph yields one path per leaf") {
  RawInstance raw;
  raw.origin = "o";
  for (int i = 0; i < 6; ++i) {
    raw.nodes.push_back({"n" + std::to_string(i), 1, 5.0, std::nullopt});
    raw.arcs.push_back({"o", "n" + std::to_string(i), 50.0, std::nullopt});
  }
  raw.fleet = default_fleet();
  raw.arc_limit = 3;
  Instance inst = validate_or_throw(raw);
  CHECK(enumerate_all_paths(inst).size() == 6);
}

TEST_CASE("complete first layer of five nodes gives 85 paths") {
  RawInstance raw;
  raw.origin = "o";
  for (int i = 0; i < 5; ++i) {
    raw.nodes.push_back({"n" + std::to_string(i), 1, 5.0, std::nullopt});
  }
  for (int i = 0; i < 5; ++i) {
    raw.arcs.push_back({"o", "n" + std::to_string(i), 200.0, std::nullopt});
    for (int j = 0; j < 5; ++j) {
      if (i != j) {
        raw.arcs.push_back(
            {"n" + std::to_string(i), "n" + std::to_string(j), 150.0, std::nullopt});
      }
    }
  }
  raw.fleet = default_fleet();
  raw.arc_limit = 3;
  Instance inst = validate_or_throw(raw);
  CHECK(enumerate_all_paths(inst).size() == 5 + 5 * 4 + 5 * 4 * 3);
}

TEST_CASE("size guard trips on a tiny cap") {
  Instance inst = t1();
  CHECK_THROWS_AS(enumerate_all_paths(inst, 2), SizeGuardError);
}

TEST_CASE("t1 brute-force optimum is 940") {
  Instance inst = t1();
  Solution s = solve_exact(inst);
  CHECK(s.stats.status == SolveStatus::Optimal);
  CHECK(s.objective == doctest::Approx(940.0));
  CHECK(s.first_layer_cost == doctest::Approx(820.0));
  CHECK(s.outsourcing_cost == doctest::Approx(120.0));
  // Cross-checked by direct enumeration of vehicle count assignments.
  CHECK(enumerate_plans(inst, 3, 1500.0) == doctest::Approx(940.0));
}

TEST_CASE("zero demand solves to an empty plan") {
  RawInstance raw = t1_raw();
  for (RawNode& n : raw.nodes) n.demand = 0.0;
  Instance inst = validate_or_throw(raw);
  Solution s = solve_exact(inst);
  CHECK(s.objective == doctest::Approx(0.0));
  CHECK(s.vehicle_plan.empty());
}

TEST_CASE("single node at 170 cubic meters takes one big vehicle") {
  Instance inst = single_node(170.0);
  Solution s = solve_exact(inst);
  CHECK(s.objective == doctest::Approx(750.0));
  REQUIRE(s.vehicle_plan.size() == 1);
  CHECK(s.vehicle_plan[0].first.vehicle == 4);
  CHECK(s.vehicle_plan[0].second == 1);
  CHECK(enumerate_plans(inst, 3, 2000.0) == doctest::Approx(750.0));
}

TEST_CASE("exhaustive plan enumeration confirms the oracle on tiny instances") {
  for (std::uint64_t seed : {2ull, 5ull}) {
    GenParams params;
    params.n1 = 2;
    params.n2 = 2;
    params.demand_min = 20;
    params.demand_max = 120;
    Instance inst = generate_instance(seed, params);
    Solution s = solve_exact(inst);
    CHECK(close(enumerate_plans(inst, 2, s.objective * 2 + 100), s.objective, 1e-6));
  }
}

TEST_CASE("oracle stats are coherent") {
  Instance inst = t1();
  Solution s = solve_exact(inst);
  CHECK(s.stats.exact);
  CHECK(s.stats.lb == doctest::Approx(s.objective));
  CHECK(s.stats.columns_generated == 16);
  CHECK(s.stats.nodes_explored >= 1);
}
