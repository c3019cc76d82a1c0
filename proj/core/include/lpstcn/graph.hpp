#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpstcn {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// One vehicle class of the heterogeneous fleet. Within a fleet, ids are
/// contiguous 1..K and capacities strictly ascending in id.
struct VehicleType {
  int id = 0;
  double capacity = 0.0;   // m^3
  double unit_cost = 0.0;  // CNY per km
};

enum class Layer { First, Second };
enum class ArcKind { FirstLayer, CrossLayer };

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// A transit center. Index 0 of Instance::nodes is the origin, which carries
/// no demand; all other nodes are destinations in layer 1 or layer 2.
struct Node {
  std::string name;
  Layer layer = Layer::First;
  double demand = 0.0;            // m^3
  std::optional<Point> position;  // set by the generator, never serialized
};

/// Directed link. First-layer arcs run o/V1 -> V1 and carry vehicles;
/// cross-layer arcs run V1 -> V2 and carry outsourced packages only.
struct Arc {
  int tail = 0;
  int head = 0;
  double length = 0.0;          // km
  ArcKind kind = ArcKind::FirstLayer;
  double outsource_rate = 0.0;  // CNY/(km*m^3), cross-layer arcs only
};

/// Validated two-layer shipment network. Immutable once built: solvers may
/// share a const Instance across threads.
struct Instance {
  std::vector<Node> nodes;  // nodes[0] is the origin
  std::vector<Arc> arcs;
  std::vector<VehicleType> fleet;
  int arc_limit = 3;  // max arcs per vehicle path

  // Derived indexes, filled by finalize().
  std::vector<int> first_layer;       // node indices, ascending, origin excluded
  std::vector<int> second_layer;      // node indices, ascending
  std::vector<int> first_layer_rank;  // node -> dense index into first_layer, -1 otherwise
  std::vector<std::vector<int>> out_arcs;  // node -> arc ids, in arc order
  std::vector<std::vector<int>> in_arcs;
  double total_demand = 0.0;  // flow supplied at the origin

  static constexpr int kOrigin = 0;

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_arcs() const { return static_cast<int>(arcs.size()); }
  int num_first_layer() const { return static_cast<int>(first_layer.size()); }
  int num_vehicle_types() const { return static_cast<int>(fleet.size()); }

  double demand(int v) const { return nodes[v].demand; }
  bool is_origin(int v) const { return v == kOrigin; }
  bool is_first_layer(int v) const {
    return v != kOrigin && nodes[v].layer == Layer::First;
  }
  bool is_second_layer(int v) const {
    return v != kOrigin && nodes[v].layer == Layer::Second;
  }

  const VehicleType& vehicle(int id) const { return fleet.at(id - 1); }
  double max_capacity() const;  // largest capacity over the fleet

  /// Arc id of (tail, head), or -1 when absent. Arcs are unique per pair.
  int find_arc(int tail, int head) const;

  /// Recomputes the derived indexes from nodes/arcs. Called by the validator
  /// and the generator; not intended for mutation afterwards.
  void finalize();
};

/// An elementary first-layer vehicle path starting at the origin.
struct Path {
  std::vector<int> arc_ids;   // chained arcs, first tail is the origin
  std::vector<int> node_seq;  // visited first-layer nodes, in visit order
  double length = 0.0;        // km, sum of arc lengths

  int num_arcs() const { return static_cast<int>(arc_ids.size()); }
  bool visits(int node) const;
  /// Bitmask over first_layer_rank of the visited nodes.
  std::uint64_t visited_mask(const Instance& inst) const;
};

/// Checks elementarity, arc chaining, origin start and the arc limit.
bool path_is_valid(const Instance& inst, const Path& path);

/// Builds the path along the given first-layer node sequence.
/// Throws std::invalid_argument when an arc is missing or a node repeats.
Path make_path(const Instance& inst, const std::vector<int>& node_seq);

// ---------------------------------------------------------------------------
// Validation

struct RawNode {
  std::string id;
  int layer = 1;  // 1 or 2
  double demand = 0.0;
  std::optional<Point> position;
};

struct RawArc {
  std::string tail;
  std::string head;
  double length = 0.0;
  std::optional<double> outsource_rate;
};

/// Parsed-but-unchecked instance description.
struct RawInstance {
  std::string origin;
  std::vector<RawNode> nodes;
  std::vector<RawArc> arcs;
  std::vector<VehicleType> fleet;
  int arc_limit = 3;
};

enum class ViolationKind {
  MissingDirectArc,
  OrphanSecondLayer,
  NegativeDemand,
  NonPositiveLength,
  UnknownNode,
  DuplicateNode,
  DuplicateArc,
  BadArcEndpoints,
  MissingOutsourceRate,
  UnexpectedOutsourceRate,
  NonPositiveOutsourceRate,
  BadFleet,
  BadArcLimit,
  EmptyFirstLayer,
  UnreachableDemand,
};

const char* violation_kind_name(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string subject;  // offending node/arc/field
  std::string message;
};

struct ValidationResult {
  std::optional<Instance> instance;  // set iff violations is empty
  std::vector<Violation> violations;
  bool ok() const { return instance.has_value(); }
};

/// Checks every structural rule of the two-layer network: each first-layer
/// node has a direct arc from the origin, second-layer nodes have at least
/// one in-neighbor, demands are nonnegative, lengths positive, outsourcing
/// rates present exactly on cross-layer arcs, the fleet is well formed, and
/// every positive demand is reachable from the origin.
ValidationResult validate_instance(const RawInstance& raw);

struct ValidationError : std::runtime_error {
  explicit ValidationError(std::vector<Violation> v);
  std::vector<Violation> violations;
};

/// validate_instance, throwing ValidationError on any violation.
Instance validate_or_throw(const RawInstance& raw);

// ---------------------------------------------------------------------------
// Triangle inequality

struct TriangleWitness {
  int i = 0, k = 0, j = 0;  // l(i,j) > l(i,k) + l(k,j)
};

/// Returns a violating (i,k,j) triple over first-layer arcs, or nullopt when
/// l_ij <= l_ik + l_kj holds for every two-arc chain shadowing an arc.
std::optional<TriangleWitness> check_triangle_violation(const Instance& inst);

inline bool check_triangle(const Instance& inst) {
  return !check_triangle_violation(inst).has_value();
}

}  // namespace lpstcn
