#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lpstcn/graph.hpp"

namespace lpstcn {

/// The four-type fleet used as the generator default:
/// capacities 65/90/130/175 m^3 at 4.1/4.7/6.5/7.5 CNY per km.
std::vector<VehicleType> default_fleet();

struct GenParams {
  int n1 = 10;  // first-layer destinations (ignored when theta > 0)
  int n2 = 20;  // second-layer destinations (ignored when theta > 0)
  double area_km = 1500.0;             // side of the placement square
  double theta = 0.0;                  // > 0: assign layers by demand/distance ranks
  double first_layer_radius_km = 500.0;  // connect first-layer pairs closer than this
  int second_layer_fanin = 3;            // cross arcs per second-layer node
  std::vector<VehicleType> fleet = default_fleet();
  double outsource_rate = 0.06;  // CNY/(km*m^3)
  double demand_min = 10.0;
  double demand_max = 200.0;
  int arc_limit = 3;
};

/// Synthesizes a validated Euclidean instance. Deterministic in (seed,
/// params): repeated calls yield byte-identical serializations. Node demands
/// are uniform in [demand_min, demand_max]; distances are Euclidean, so the
/// triangle inequality holds by construction.
Instance generate_instance(std::uint64_t seed, const GenParams& params = {});

// ---------------------------------------------------------------------------
// Layer partitioning by demand/distance ranks

struct OdRecord {
  std::string dest;
  double demand = 0.0;
  double distance = 0.0;  // km from the origin
};

struct PartitionOutcome {
  bool ok = false;
  std::string error;  // "InvalidPartition: ..." when !ok
  std::vector<std::string> first_layer;
  std::vector<std::string> second_layer;
};

/// Sorts demands ascending and distances descending; destinations ranked
/// within the top ceil(theta*N) on both lists are assigned to the second
/// layer, everything else to the first. Ties break by destination id.
/// Fails with InvalidPartition when the first layer would be empty while the
/// second is not.
PartitionOutcome partition_layers(const std::vector<OdRecord>& records, double theta);

// ---------------------------------------------------------------------------
// Shared geometry, reused by the theta sweep so every theta sees the same
// node placement and demands.

struct SeededGeometry {
  Point origin;
  std::vector<std::string> names;  // zero-padded, lexicographic = draw order
  std::vector<Point> points;
  std::vector<double> demands;

  std::vector<OdRecord> od_records() const;
};

SeededGeometry sample_geometry(std::uint64_t seed, int n_destinations,
                               const GenParams& params);

/// Builds and validates an instance over the geometry with the given layer
/// assignment (true = second layer).
Instance assemble_instance(const SeededGeometry& geom,
                           const std::vector<bool>& in_second_layer,
                           const GenParams& params);

}  // namespace lpstcn
