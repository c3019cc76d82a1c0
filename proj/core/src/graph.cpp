#include "lpstcn/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <sstream>

namespace lpstcn {

double Instance::max_capacity() const {
  double q = 0.0;
  for (const auto& k : fleet) q = std::max(q, k.capacity);
  return q;
}

int Instance::find_arc(int tail, int head) const {
  for (int a : out_arcs[tail]) {
    if (arcs[a].head == head) return a;
  }
  return -1;
}

void Instance::finalize() {
  const int n = num_nodes();
  first_layer.clear();
  second_layer.clear();
  first_layer_rank.assign(n, -1);
  out_arcs.assign(n, {});
  in_arcs.assign(n, {});
  total_demand = 0.0;

  for (int v = 1; v < n; ++v) {
    if (nodes[v].layer == Layer::First) {
      first_layer_rank[v] = static_cast<int>(first_layer.size());
      first_layer.push_back(v);
    } else {
      second_layer.push_back(v);
    }
    total_demand += nodes[v].demand;
  }
  for (int a = 0; a < num_arcs(); ++a) {
    out_arcs[arcs[a].tail].push_back(a);
    in_arcs[arcs[a].head].push_back(a);
  }
}

bool Path::visits(int node) const {
  return std::find(node_seq.begin(), node_seq.end(), node) != node_seq.end();
}

std::uint64_t Path::visited_mask(const Instance& inst) const {
  std::uint64_t mask = 0;
  for (int v : node_seq) {
    int rank = inst.first_layer_rank[v];
    if (rank >= 0 && rank < 64) mask |= (std::uint64_t{1} << rank);
  }
  return mask;
}

bool path_is_valid(const Instance& inst, const Path& path) {
  if (path.arc_ids.empty()) return false;
  if (path.num_arcs() > inst.arc_limit) return false;
  if (path.node_seq.size() != path.arc_ids.size()) return false;

  int at = Instance::kOrigin;
  double length = 0.0;
  std::vector<int> seen;
  for (std::size_t i = 0; i < path.arc_ids.size(); ++i) {
    int a = path.arc_ids[i];
    if (a < 0 || a >= inst.num_arcs()) return false;
    const Arc& arc = inst.arcs[a];
    if (arc.kind != ArcKind::FirstLayer) return false;
    if (arc.tail != at) return false;
    if (arc.head != path.node_seq[i]) return false;
    if (std::find(seen.begin(), seen.end(), arc.head) != seen.end()) return false;
    seen.push_back(arc.head);
    at = arc.head;
    length += arc.length;
  }
  return std::abs(length - path.length) <= 1e-9 * std::max(1.0, length);
}

Path make_path(const Instance& inst, const std::vector<int>& node_seq) {
  Path path;
  int at = Instance::kOrigin;
  for (int v : node_seq) {
    int a = inst.find_arc(at, v);
    if (a < 0) {
      throw std::invalid_argument("make_path: no arc " + inst.nodes[at].name +
                                  " -> " + inst.nodes[v].name);
    }
    if (path.visits(v)) {
      throw std::invalid_argument("make_path: repeated node " + inst.nodes[v].name);
    }
    path.arc_ids.push_back(a);
    path.node_seq.push_back(v);
    path.length += inst.arcs[a].length;
    at = v;
  }
  return path;
}

// ---------------------------------------------------------------------------

const char* violation_kind_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::MissingDirectArc: return "MissingDirectArc";
    case ViolationKind::OrphanSecondLayer: return "OrphanSecondLayer";
    case ViolationKind::NegativeDemand: return "NegativeDemand";
    case ViolationKind::NonPositiveLength: return "NonPositiveLength";
    case ViolationKind::UnknownNode: return "UnknownNode";
    case ViolationKind::DuplicateNode: return "DuplicateNode";
    case ViolationKind::DuplicateArc: return "DuplicateArc";
    case ViolationKind::BadArcEndpoints: return "BadArcEndpoints";
    case ViolationKind::MissingOutsourceRate: return "MissingOutsourceRate";
    case ViolationKind::UnexpectedOutsourceRate: return "UnexpectedOutsourceRate";
    case ViolationKind::NonPositiveOutsourceRate: return "NonPositiveOutsourceRate";
    case ViolationKind::BadFleet: return "BadFleet";
    case ViolationKind::BadArcLimit: return "BadArcLimit";
    case ViolationKind::EmptyFirstLayer: return "EmptyFirstLayer";
    case ViolationKind::UnreachableDemand: return "UnreachableDemand";
  }
  return "Unknown";
}

namespace {

void add_violation(std::vector<Violation>& out, ViolationKind kind,
                   std::string subject, std::string message) {
  out.push_back(Violation{kind, std::move(subject), std::move(message)});
}

}  // namespace

ValidationResult validate_instance(const RawInstance& raw) {
  ValidationResult result;
  auto& bad = result.violations;

  if (raw.arc_limit < 1) {
    add_violation(bad, ViolationKind::BadArcLimit, "arc_limit",
                  "arc_limit must be at least 1");
  }

  // Fleet: ids 1..K, capacities strictly ascending, positive costs.
  if (raw.fleet.empty()) {
    add_violation(bad, ViolationKind::BadFleet, "fleet", "fleet is empty");
  }
  for (std::size_t k = 0; k < raw.fleet.size(); ++k) {
    const VehicleType& t = raw.fleet[k];
    if (t.id != static_cast<int>(k) + 1) {
      add_violation(bad, ViolationKind::BadFleet, "fleet",
                    "vehicle ids must be contiguous 1..K in order");
    }
    if (t.capacity <= 0) {
      add_violation(bad, ViolationKind::BadFleet, "fleet",
                    "vehicle " + std::to_string(t.id) + " has non-positive capacity");
    }
    if (t.unit_cost <= 0) {
      add_violation(bad, ViolationKind::BadFleet, "fleet",
                    "vehicle " + std::to_string(t.id) + " has non-positive unit cost");
    }
    if (k > 0 && raw.fleet[k - 1].capacity >= t.capacity) {
      add_violation(bad, ViolationKind::BadFleet, "fleet",
                    "capacities must be strictly ascending in vehicle id");
    }
  }

  // Node table. The origin id must not collide with a destination id.
  std::map<std::string, int> index;  // name -> node index (0 = origin)
  Instance inst;
  inst.nodes.push_back(Node{raw.origin, Layer::First, 0.0, std::nullopt});
  index[raw.origin] = 0;
  for (const RawNode& rn : raw.nodes) {
    if (index.count(rn.id)) {
      add_violation(bad, ViolationKind::DuplicateNode, rn.id,
                    "node id appears twice (or collides with the origin)");
      continue;
    }
    if (rn.demand < 0) {
      add_violation(bad, ViolationKind::NegativeDemand, rn.id,
                    "demand must be nonnegative");
    }
    index[rn.id] = static_cast<int>(inst.nodes.size());
    inst.nodes.push_back(Node{rn.id, rn.layer == 2 ? Layer::Second : Layer::First,
                              rn.demand, rn.position});
  }

  auto layer_of = [&](int v) { return inst.nodes[v].layer; };

  // Arcs: endpoints known, kinds inferred from layers, lengths positive,
  // outsourcing rate present exactly on cross-layer arcs, no duplicates.
  std::map<std::pair<int, int>, int> seen_arcs;
  for (const RawArc& ra : raw.arcs) {
    auto it_tail = index.find(ra.tail);
    auto it_head = index.find(ra.head);
    if (it_tail == index.end() || it_head == index.end()) {
      add_violation(bad, ViolationKind::UnknownNode, ra.tail + "->" + ra.head,
                    "arc references an undeclared node");
      continue;
    }
    int tail = it_tail->second;
    int head = it_head->second;
    if (ra.length <= 0) {
      add_violation(bad, ViolationKind::NonPositiveLength, ra.tail + "->" + ra.head,
                    "arc length must be positive");
    }
    if (seen_arcs.count({tail, head})) {
      add_violation(bad, ViolationKind::DuplicateArc, ra.tail + "->" + ra.head,
                    "arc appears twice");
      continue;
    }
    seen_arcs[{tail, head}] = 1;

    ArcKind kind;
    bool tail_first = (tail == Instance::kOrigin) || layer_of(tail) == Layer::First;
    if (head == Instance::kOrigin || tail == head) {
      add_violation(bad, ViolationKind::BadArcEndpoints, ra.tail + "->" + ra.head,
                    "arcs may not enter the origin or loop");
      continue;
    }
    if (tail_first && layer_of(head) == Layer::First) {
      kind = ArcKind::FirstLayer;
    } else if (tail != Instance::kOrigin && layer_of(tail) == Layer::First &&
               layer_of(head) == Layer::Second) {
      kind = ArcKind::CrossLayer;
    } else {
      add_violation(bad, ViolationKind::BadArcEndpoints, ra.tail + "->" + ra.head,
                    "arc endpoints do not form a first-layer or cross-layer link");
      continue;
    }

    double rate = 0.0;
    if (kind == ArcKind::CrossLayer) {
      if (!ra.outsource_rate.has_value()) {
        add_violation(bad, ViolationKind::MissingOutsourceRate,
                      ra.tail + "->" + ra.head,
                      "cross-layer arc needs an outsource_rate");
      } else if (*ra.outsource_rate <= 0) {
        add_violation(bad, ViolationKind::NonPositiveOutsourceRate,
                      ra.tail + "->" + ra.head, "outsource_rate must be positive");
      } else {
        rate = *ra.outsource_rate;
      }
    } else if (ra.outsource_rate.has_value()) {
      add_violation(bad, ViolationKind::UnexpectedOutsourceRate,
                    ra.tail + "->" + ra.head,
                    "outsource_rate is only valid on cross-layer arcs");
    }
    inst.arcs.push_back(Arc{tail, head, ra.length, kind, rate});
  }

  inst.fleet = raw.fleet;
  inst.arc_limit = raw.arc_limit;
  inst.finalize();

  // Direct arc from the origin to every first-layer node.
  for (int v : inst.first_layer) {
    if (inst.find_arc(Instance::kOrigin, v) < 0) {
      add_violation(bad, ViolationKind::MissingDirectArc, inst.nodes[v].name,
                    "first-layer node lacks a direct arc from the origin");
    }
  }
  // Every second-layer node needs at least one in-neighbor.
  for (int v : inst.second_layer) {
    if (inst.in_arcs[v].empty()) {
      add_violation(bad, ViolationKind::OrphanSecondLayer, inst.nodes[v].name,
                    "second-layer node has no in-neighbor");
    }
  }
  // All vehicle paths live in layer 1.
  if (inst.first_layer.empty() &&
      (!inst.second_layer.empty() || inst.total_demand > 0)) {
    add_violation(bad, ViolationKind::EmptyFirstLayer, "nodes",
                  "first layer may not be empty when demand exists");
  }
  // Positive demand must be reachable from the origin.
  {
    std::vector<bool> reach(inst.num_nodes(), false);
    reach[Instance::kOrigin] = true;
    std::deque<int> queue{Instance::kOrigin};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int a : inst.out_arcs[v]) {
        int h = inst.arcs[a].head;
        if (!reach[h]) {
          reach[h] = true;
          queue.push_back(h);
        }
      }
    }
    for (int v = 1; v < inst.num_nodes(); ++v) {
      if (inst.nodes[v].demand > 0 && !reach[v]) {
        add_violation(bad, ViolationKind::UnreachableDemand, inst.nodes[v].name,
                      "node with positive demand is unreachable from the origin");
      }
    }
  }

  if (bad.empty()) result.instance = std::move(inst);
  return result;
}

ValidationError::ValidationError(std::vector<Violation> v)
    : std::runtime_error([&v] {
        std::ostringstream os;
        os << "invalid instance:";
        for (const auto& violation : v) {
          os << "\n  [" << violation_kind_name(violation.kind) << "] "
             << violation.subject << ": " << violation.message;
        }
        return os.str();
      }()),
      violations(std::move(v)) {}

Instance validate_or_throw(const RawInstance& raw) {
  ValidationResult result = validate_instance(raw);
  if (!result.ok()) throw ValidationError(std::move(result.violations));
  return std::move(*result.instance);
}

std::optional<TriangleWitness> check_triangle_violation(const Instance& inst) {
  // For every chain (i,k),(k,j) of first-layer arcs whose shortcut (i,j)
  // exists, the shortcut must not be longer than the chain.
  for (int k = 0; k < inst.num_nodes(); ++k) {
    for (int a_in : inst.in_arcs[k]) {
      const Arc& ik = inst.arcs[a_in];
      if (ik.kind != ArcKind::FirstLayer) continue;
      for (int a_out : inst.out_arcs[k]) {
        const Arc& kj = inst.arcs[a_out];
        if (kj.kind != ArcKind::FirstLayer) continue;
        if (kj.head == ik.tail) continue;
        int a_direct = inst.find_arc(ik.tail, kj.head);
        if (a_direct < 0) continue;
        const Arc& ij = inst.arcs[a_direct];
        if (ij.length > ik.length + kj.length + 1e-9) {
          return TriangleWitness{ik.tail, k, kj.head};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace lpstcn
