#include "lpstcn/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace lpstcn {

std::vector<VehicleType> default_fleet() {
  return {{1, 65.0, 4.1}, {2, 90.0, 4.7}, {3, 130.0, 6.5}, {4, 175.0, 7.5}};
}

namespace {

// splitmix64: tiny, portable, deterministic across platforms.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

double dist(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

std::string padded_name(int i, int width) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "d%0*d", width, i);
  return buf;
}

int top_count(double theta, int n) {
  // ceil(theta*n) guarded against fp noise like 0.6*30 = 18.000000000000004.
  return static_cast<int>(std::ceil(theta * n - 1e-9));
}

}  // namespace

PartitionOutcome partition_layers(const std::vector<OdRecord>& records, double theta) {
  if (records.empty()) throw std::invalid_argument("partition_layers: empty records");
  if (theta < 0.0 || theta > 1.0) {
    throw std::invalid_argument("partition_layers: theta must be in [0,1]");
  }

  const int n = static_cast<int>(records.size());
  const int top = top_count(theta, n);

  std::vector<int> by_demand(n), by_distance(n);
  for (int i = 0; i < n; ++i) by_demand[i] = by_distance[i] = i;
  std::sort(by_demand.begin(), by_demand.end(), [&](int a, int b) {
    if (records[a].demand != records[b].demand) return records[a].demand < records[b].demand;
    return records[a].dest < records[b].dest;
  });
  std::sort(by_distance.begin(), by_distance.end(), [&](int a, int b) {
    if (records[a].distance != records[b].distance) return records[a].distance > records[b].distance;
    return records[a].dest < records[b].dest;
  });

  std::vector<bool> small_demand(n, false), long_distance(n, false);
  for (int r = 0; r < top; ++r) {
    small_demand[by_demand[r]] = true;
    long_distance[by_distance[r]] = true;
  }

  PartitionOutcome out;
  for (int i = 0; i < n; ++i) {
    if (small_demand[i] && long_distance[i]) {
      out.second_layer.push_back(records[i].dest);
    } else {
      out.first_layer.push_back(records[i].dest);
    }
  }
  std::sort(out.first_layer.begin(), out.first_layer.end());
  std::sort(out.second_layer.begin(), out.second_layer.end());

  if (out.first_layer.empty() && !out.second_layer.empty()) {
    out.ok = false;
    out.error = "InvalidPartition: first layer may not be empty while the second is not";
    return out;
  }
  out.ok = true;
  return out;
}

std::vector<OdRecord> SeededGeometry::od_records() const {
  std::vector<OdRecord> records;
  records.reserve(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    records.push_back(OdRecord{names[i], demands[i], dist(origin, points[i])});
  }
  return records;
}

SeededGeometry sample_geometry(std::uint64_t seed, int n_destinations,
                               const GenParams& params) {
  if (n_destinations < 0) throw std::invalid_argument("sample_geometry: negative count");
  Rng rng(seed);
  SeededGeometry geom;
  const double min_sep = params.area_km * 1e-6;

  auto draw_point = [&]() {
    for (;;) {
      Point p{rng.uniform(0.0, params.area_km), rng.uniform(0.0, params.area_km)};
      bool clear = dist(p, geom.origin) >= min_sep;
      for (const Point& q : geom.points) {
        if (!clear) break;
        if (dist(p, q) < min_sep) clear = false;
      }
      if (clear) return p;
    }
  };

  geom.origin = Point{rng.uniform(0.0, params.area_km), rng.uniform(0.0, params.area_km)};
  const int width = n_destinations >= 100 ? 3 : 2;
  for (int i = 0; i < n_destinations; ++i) {
    Point p = draw_point();
    geom.names.push_back(padded_name(i + 1, width));
    geom.points.push_back(p);
    geom.demands.push_back(rng.uniform(params.demand_min, params.demand_max));
  }
  return geom;
}

Instance assemble_instance(const SeededGeometry& geom,
                           const std::vector<bool>& in_second_layer,
                           const GenParams& params) {
  const int n = static_cast<int>(geom.names.size());
  if (static_cast<int>(in_second_layer.size()) != n) {
    throw std::invalid_argument("assemble_instance: layer flags size mismatch");
  }

  RawInstance raw;
  raw.origin = "o";
  raw.arc_limit = params.arc_limit;
  raw.fleet = params.fleet;

  std::vector<int> first, second;
  for (int i = 0; i < n; ++i) {
    raw.nodes.push_back(RawNode{geom.names[i], in_second_layer[i] ? 2 : 1,
                                geom.demands[i], geom.points[i]});
    (in_second_layer[i] ? second : first).push_back(i);
  }

  auto length = [&](const Point& a, const Point& b) { return dist(a, b); };

  // Origin reaches every first-layer node directly.
  for (int i : first) {
    raw.arcs.push_back(RawArc{"o", geom.names[i],
                              length(geom.origin, geom.points[i]), std::nullopt});
  }
  // First-layer pairs within the radius, both directions.
  for (int i : first) {
    for (int j : first) {
      if (i == j) continue;
      double d = length(geom.points[i], geom.points[j]);
      if (d < params.first_layer_radius_km) {
        raw.arcs.push_back(RawArc{geom.names[i], geom.names[j], d, std::nullopt});
      }
    }
  }
  // Each second-layer node links from its nearest first-layer nodes.
  const int fanin = std::min(params.second_layer_fanin, static_cast<int>(first.size()));
  for (int j : second) {
    std::vector<int> order = first;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      double da = length(geom.points[a], geom.points[j]);
      double db = length(geom.points[b], geom.points[j]);
      if (da != db) return da < db;
      return geom.names[a] < geom.names[b];
    });
    for (int r = 0; r < fanin; ++r) {
      int i = order[r];
      raw.arcs.push_back(RawArc{geom.names[i], geom.names[j],
                                length(geom.points[i], geom.points[j]),
                                params.outsource_rate});
    }
  }
  return validate_or_throw(raw);
}

Instance generate_instance(std::uint64_t seed, const GenParams& params) {
  if (params.n1 < 1 && params.theta <= 0) {
    throw std::invalid_argument("generate_instance: n1 must be at least 1");
  }
  if (params.second_layer_fanin < 1) {
    throw std::invalid_argument("generate_instance: fanin must be at least 1");
  }
  const int total = params.n1 + params.n2;
  SeededGeometry geom = sample_geometry(seed, total, params);

  std::vector<bool> in_second(total, false);
  if (params.theta > 0) {
    PartitionOutcome part = partition_layers(geom.od_records(), params.theta);
    if (!part.ok) throw std::invalid_argument("generate_instance: " + part.error);
    std::set<std::string> second(part.second_layer.begin(), part.second_layer.end());
    for (int i = 0; i < total; ++i) in_second[i] = second.count(geom.names[i]) > 0;
  } else {
    for (int i = params.n1; i < total; ++i) in_second[i] = true;
  }
  return assemble_instance(geom, in_second, params);
}

}  // namespace lpstcn
