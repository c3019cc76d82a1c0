#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "lpstcn/generator.hpp"
#include "lpstcn/graph.hpp"
#include "lpstcn/instance_io.hpp"
#include "lpstcn/oracle.hpp"
#include "test_support.hpp"

using namespace lpstcn;
using namespace lpstcn::test;

namespace {

bool has_violation(const ValidationResult& r, ViolationKind kind,
                   const std::string& subject = "") {
  return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) {
    return v.kind == kind && (subject.empty() || v.subject == subject);
  });
}

}  // namespace

TEST_CASE("t1 validates with the expected totals") {
  Instance inst = t1();
  CHECK(inst.num_first_layer() == 2);
  CHECK(inst.second_layer.size() == 1);
  CHECK(inst.num_arcs() == 6);
  CHECK(inst.total_demand == doctest::Approx(100.0));
  CHECK(inst.arc_limit == 3);
  CHECK(inst.max_capacity() == doctest::Approx(175.0));
}

TEST_CASE("missing direct arc is flagged per node") {
  RawInstance raw = t1_raw();
  raw.arcs.erase(raw.arcs.begin() + 1);  // drop o->b
  ValidationResult r = validate_instance(raw);
  CHECK(!r.ok());
  CHECK(has_violation(r, ViolationKind::MissingDirectArc, "b"));
}

TEST_CASE("orphan second-layer node is flagged") {
  RawInstance raw = t1_raw();
  raw.arcs.resize(4);  // drop both cross arcs
  ValidationResult r = validate_instance(raw);
  CHECK(!r.ok());
  CHECK(has_violation(r, ViolationKind::OrphanSecondLayer, "z"));
}

TEST_CASE("negative demand and non-positive length are flagged") {
  RawInstance raw = t1_raw();
  raw.nodes[0].demand = -1.0;
  raw.arcs[2].length = 0.0;
  ValidationResult r = validate_instance(raw);
  CHECK(!r.ok());
  CHECK(has_violation(r, ViolationKind::NegativeDemand, "a"));
  CHECK(has_violation(r, ViolationKind::NonPositiveLength));
}

TEST_CASE("cross-layer arcs need a rate, first-layer arcs reject one") {
  RawInstance raw = t1_raw();
  raw.arcs[4].outsource_rate = std::nullopt;  // a->z
  raw.arcs[0].outsource_rate = 0.05;          // o->a
  ValidationResult r = validate_instance(raw);
  CHECK(has_violation(r, ViolationKind::MissingOutsourceRate));
  CHECK(has_violation(r, ViolationKind::UnexpectedOutsourceRate));
}

TEST_CASE("fleet ordering is enforced") {
  RawInstance raw = t1_raw();
  std::swap(raw.fleet[0], raw.fleet[1]);
  CHECK(has_violation(validate_instance(raw), ViolationKind::BadFleet));
}

TEST_CASE("validate_or_throw reports all violations") {
  RawInstance raw = t1_raw();
  raw.arcs.erase(raw.arcs.begin());
  raw.nodes[1].demand = -5;
  CHECK_THROWS_AS(validate_or_throw(raw), ValidationError);
}

TEST_CASE("path helpers enforce elementarity and chaining") {
  Instance inst = t1();
  Path p = path_of(inst, {"a", "b"});
  CHECK(p.num_arcs() == 2);
  CHECK(p.length == doctest::Approx(160.0));
  CHECK(path_is_valid(inst, p));

  CHECK_THROWS_AS(path_of(inst, {"a", "b", "a"}), std::invalid_argument);
  CHECK_THROWS_AS(path_of(inst, {"z"}), std::invalid_argument);

  Path too_long = p;
  too_long.arc_ids.push_back(p.arc_ids[0]);  // breaks chaining and limit
  too_long.node_seq.push_back(node_index(inst, "a"));
  CHECK(!path_is_valid(inst, too_long));
}

TEST_CASE("partition: theta 0 keeps everything in the first layer") {
  std::vector<OdRecord> records{{"p", 5, 900}, {"q", 20, 800}};
  PartitionOutcome out = partition_layers(records, 0.0);
  CHECK(out.ok);
  CHECK(out.first_layer.size() == 2);
  CHECK(out.second_layer.empty());
}

TEST_CASE("partition: theta 1 would empty the first layer") {
  std::vector<OdRecord> records{{"p", 5, 900}, {"q", 20, 800}};
  PartitionOutcome out = partition_layers(records, 1.0);
  CHECK(!out.ok);
  CHECK(out.error.find("InvalidPartition") == 0);
}

TEST_CASE("partition: rank intersection at theta 0.5") {
  std::vector<OdRecord> records{
      {"p", 5, 900}, {"q", 20, 800}, {"r", 50, 300}, {"s", 80, 100}};
  PartitionOutcome out = partition_layers(records, 0.5);
  REQUIRE(out.ok);
  CHECK(out.second_layer == std::vector<std::string>{"p", "q"});
  CHECK(out.first_layer == std::vector<std::string>{"r", "s"});
}

TEST_CASE("partition output is a disjoint cover of the inputs") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GenParams params;
    SeededGeometry geom = sample_geometry(seed, 12, params);
    for (double theta : {0.0, 0.3, 0.5, 0.8}) {
      PartitionOutcome out = partition_layers(geom.od_records(), theta);
      REQUIRE(out.ok);
      std::set<std::string> all(out.first_layer.begin(), out.first_layer.end());
      for (const auto& id : out.second_layer) {
        CHECK(all.insert(id).second);  // disjoint
      }
      CHECK(all.size() == geom.names.size());
    }
  }
}

TEST_CASE("generator is deterministic and Euclidean") {
  GenParams params;
  params.n1 = 5;
  params.n2 = 7;
  Instance a = generate_instance(42, params);
  Instance b = generate_instance(42, params);
  CHECK(instance_to_json(a) == instance_to_json(b));
  CHECK(check_triangle(a));
  CHECK(a.num_first_layer() == 5);
  CHECK(a.second_layer.size() == 7);
  // Direct arcs exist by construction; validator accepted them already.
  for (int v : a.first_layer) CHECK(a.find_arc(Instance::kOrigin, v) >= 0);
}

TEST_CASE("generator with an empty second layer") {
  GenParams params;
  params.n1 = 4;
  params.n2 = 0;
  Instance inst = generate_instance(7, params);
  CHECK(inst.second_layer.empty());
  for (const Arc& arc : inst.arcs) CHECK(arc.kind == ArcKind::FirstLayer);
}

TEST_CASE("generator honors theta-based partitioning") {
  GenParams params;
  params.n1 = 10;
  params.n2 = 10;
  params.theta = 0.5;
  Instance inst = generate_instance(11, params);
  CHECK(inst.num_first_layer() + static_cast<int>(inst.second_layer.size()) == 20);
  CHECK(inst.num_first_layer() >= 10);  // the intersection can only shrink V2
}

TEST_CASE("triangle holds on t1 and fails on a built counterexample") {
  CHECK(check_triangle(t1()));

  RawInstance raw;
  raw.origin = "o";
  raw.nodes = {{"a", 1, 1.0, std::nullopt}, {"b", 1, 1.0, std::nullopt}};
  raw.arcs = {{"o", "a", 10.0, std::nullopt},
              {"a", "b", 10.0, std::nullopt},
              {"o", "b", 100.0, std::nullopt}};
  raw.fleet = default_fleet();
  Instance inst = validate_or_throw(raw);
  auto witness = check_triangle_violation(inst);
  REQUIRE(witness.has_value());
  CHECK(witness->i == Instance::kOrigin);
  CHECK(witness->k == node_index(inst, "a"));
  CHECK(witness->j == node_index(inst, "b"));
}

TEST_CASE("triangle is vacuously true without two-arc chains") {
  Instance inst = single_node(50.0);
  CHECK(check_triangle(inst));
}

TEST_CASE("generated instances only produce valid paths") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Instance inst = small_random(seed);
    for (const Path& p : enumerate_all_paths(inst)) {
      CHECK(path_is_valid(inst, p));
      CHECK(p.num_arcs() <= inst.arc_limit);
    }
  }
}
