#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "lpstcn/enumeration.hpp"
#include "lpstcn/oracle.hpp"
#include "lpstcn/pricing.hpp"
#include "test_support.hpp"

using namespace lpstcn;
using namespace lpstcn::test;

namespace {

std::vector<Column> all_columns(const Instance& inst) {
  std::vector<Column> all;
  for (const Path& p : enumerate_all_paths(inst)) {
    for (const VehicleType& k : inst.fleet) all.push_back(Column{p, k.id});
  }
  return dedup_columns(std::move(all));
}

// Reference filter: the full enumeration with reduced costs evaluated
// directly against the threshold.
std::vector<Column> brute_filter(const Instance& inst, const GapBudget& budget) {
  std::vector<Column> out;
  for (const Column& c : all_columns(inst)) {
    if (reduced_cost(inst, c.path, c.vehicle, budget.duals) < budget.gap + 1e-9) {
      out.push_back(c);
    }
  }
  return out;
}

bool same_columns(const std::vector<Column>& a, const std::vector<Column>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!column_equal(a[i], b[i])) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("budget clamps tiny negatives and rejects real ones") {
  DualSolution d;
  GapBudget ok = make_gap_budget(100.0, 100.0 - 1e-8, d);
  CHECK(ok.gap == 0.0);
  CHECK_THROWS_AS(make_gap_budget(100.0, 99.0, d), std::invalid_argument);
}

TEST_CASE("zero gap on an lp-integral instance keeps only zero-cost columns") {
  // Demand exactly one full type-4 vehicle: LP = IP = 750.
  Instance inst = single_node(175.0);
  CgOutcome cg = run_column_generation(inst);
  CHECK(cg.lower_bound == doctest::Approx(750.0));

  GapBudget budget = make_gap_budget(cg.lower_bound, 750.0, cg.duals);
  std::vector<Column> got = enumerate_gap_columns(inst, budget);
  CHECK(same_columns(got, brute_filter(inst, budget)));
  for (const Column& c : got) {
    CHECK(reduced_cost(inst, c.path, c.vehicle, budget.duals) < 1e-9);
  }

  // The final model over the generated plus enumerated columns still reaches
  // the upper bound.
  std::vector<Column> final_cols = cg.columns;
  final_cols.insert(final_cols.end(), got.begin(), got.end());
  MipResult mip = solve_mip(build_rmp(inst, dedup_columns(final_cols)).model);
  CHECK(mip.objective == doctest::Approx(750.0));
}

TEST_CASE("t1 gap filter matches the brute-force filter") {
  Instance inst = t1();
  CgOutcome cg = run_column_generation(inst);
  GapBudget budget = make_gap_budget(cg.lower_bound, 940.0, cg.duals);
  CHECK(budget.gap == doctest::Approx(391.4286).epsilon(1e-4));

  std::vector<Column> got = enumerate_gap_columns(inst, budget);
  std::vector<Column> expected = brute_filter(inst, budget);
  CHECK(same_columns(got, expected));
  // The filter prunes something on t1: 16 columns in the universe.
  CHECK(got.size() < all_columns(inst).size());
}

TEST_CASE("infinite budget enumerates the whole universe") {
  Instance inst = t1();
  DualSolution zero;
  zero.pi.assign(inst.num_arcs(), 0.0);
  GapBudget budget;
  budget.gap = kInfinity;
  budget.duals = zero;
  std::vector<Column> got = enumerate_gap_columns(inst, budget);
  CHECK(same_columns(got, all_columns(inst)));
}

TEST_CASE("enumeration equals the brute filter on random instances") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    Instance inst = small_random(seed);
    CgOutcome cg = run_column_generation(inst);
    MipResult ub = solve_mip(build_rmp(inst, cg.columns).model);
    REQUIRE(ub.status == MipStatus::Optimal);

    GapBudget budget = make_gap_budget(cg.lower_bound, ub.objective, cg.duals);
    std::vector<Column> got = enumerate_gap_columns(inst, budget);
    CHECK(same_columns(got, brute_filter(inst, budget)));

    // Consistency: every generated column under the threshold reappears.
    for (const Column& c : cg.columns) {
      if (reduced_cost(inst, c.path, c.vehicle, budget.duals) < budget.gap) {
        CHECK(std::binary_search(got.begin(), got.end(), c, column_less));
      }
    }
  }
}

TEST_CASE("enumeration output is deterministically ordered") {
  Instance inst = t1();
  CgOutcome cg = run_column_generation(inst);
  GapBudget budget = make_gap_budget(cg.lower_bound, 940.0, cg.duals);
  std::vector<Column> a = enumerate_gap_columns(inst, budget);
  std::vector<Column> b = enumerate_gap_columns(inst, budget);
  CHECK(same_columns(a, b));
  CHECK(std::is_sorted(a.begin(), a.end(), column_less));
}
