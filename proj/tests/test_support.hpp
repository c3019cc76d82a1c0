#pragma once

// Shared fixtures and brute-force helpers for the test suites.

#include <algorithm>
#include <cmath>
#include <vector>

#include "lpstcn/generator.hpp"
#include "lpstcn/graph.hpp"
#include "lpstcn/linear_model.hpp"
#include "lpstcn/master.hpp"

namespace lpstcn::test {

// Two first-layer nodes a,b (demand 50/40), one outsourced node z (demand
// 10), the default four-type fleet, arc limit 3. Hand-checkable: the optimum
// is 940 (two type-1 vehicles on the direct arcs plus 10 m^3 outsourced via
// a), the LP relaxation is 548.571...
inline RawInstance t1_raw() {
  RawInstance raw;
  raw.origin = "o";
  raw.nodes = {
      {"a", 1, 50.0, std::nullopt},
      {"b", 1, 40.0, std::nullopt},
      {"z", 2, 10.0, std::nullopt},
  };
  raw.arcs = {
      {"o", "a", 100.0, std::nullopt},
      {"o", "b", 100.0, std::nullopt},
      {"a", "b", 60.0, std::nullopt},
      {"b", "a", 60.0, std::nullopt},
      {"a", "z", 200.0, 0.06},
      {"b", "z", 250.0, 0.06},
  };
  raw.fleet = default_fleet();
  raw.arc_limit = 3;
  return raw;
}

inline Instance t1() { return validate_or_throw(t1_raw()); }

inline Instance t1_zero_z() {
  RawInstance raw = t1_raw();
  raw.nodes[2].demand = 0.0;
  return validate_or_throw(raw);
}

// Single first-layer node at the given demand and distance, default fleet.
inline Instance single_node(double demand, double length_km = 100.0) {
  RawInstance raw;
  raw.origin = "o";
  raw.nodes = {{"a", 1, demand, std::nullopt}};
  raw.arcs = {{"o", "a", length_km, std::nullopt}};
  raw.fleet = default_fleet();
  raw.arc_limit = 3;
  return validate_or_throw(raw);
}

// Small exactness-suite style instance: sizes cycle with the seed.
inline Instance small_random(std::uint64_t seed) {
  GenParams params;
  params.n1 = 3 + static_cast<int>(seed % 6);       // 3..8
  params.n2 = static_cast<int>((seed / 7) % 11);    // 0..10
  params.area_km = 1000.0;
  params.first_layer_radius_km = 500.0;
  params.second_layer_fanin = 3;
  return generate_instance(seed, params);
}

inline int node_index(const Instance& inst, const std::string& name) {
  for (int v = 0; v < inst.num_nodes(); ++v) {
    if (inst.nodes[v].name == name) return v;
  }
  return -1;
}

inline Path path_of(const Instance& inst, const std::vector<std::string>& names) {
  std::vector<int> seq;
  for (const auto& n : names) seq.push_back(node_index(inst, n));
  return make_path(inst, seq);
}

inline bool close(double a, double b, double tol = 1e-6) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace lpstcn::test
