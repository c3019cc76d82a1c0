#include "lpstcn/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace lpstcn {

namespace {

using nlohmann::json;

double require_number(const json& obj, const char* field, const std::string& where) {
  if (!obj.contains(field) || !obj[field].is_number()) {
    throw ParseError(where + ": missing or non-numeric field '" + field + "'");
  }
  return obj[field].get<double>();
}

std::string require_string(const json& obj, const char* field,
                           const std::string& where) {
  if (!obj.contains(field) || !obj[field].is_string()) {
    throw ParseError(where + ": missing or non-string field '" + field + "'");
  }
  return obj[field].get<std::string>();
}

const json& require_array(const json& obj, const char* field) {
  if (!obj.contains(field) || !obj[field].is_array()) {
    throw ParseError(std::string("instance: missing or non-array field '") + field +
                     "'");
  }
  return obj[field];
}

}  // namespace

RawInstance instance_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("instance: top level must be an object");

  RawInstance raw;
  raw.origin = require_string(doc, "origin", "instance");
  if (!doc.contains("arc_limit") || !doc["arc_limit"].is_number_integer()) {
    throw ParseError("instance: missing or non-integer field 'arc_limit'");
  }
  raw.arc_limit = doc["arc_limit"].get<int>();

  for (const json& jn : require_array(doc, "nodes")) {
    std::string where = "node '" + (jn.contains("id") && jn["id"].is_string()
                                        ? jn["id"].get<std::string>()
                                        : std::string("?")) +
                        "'";
    RawNode node;
    node.id = require_string(jn, "id", where);
    double layer = require_number(jn, "layer", where);
    if (layer != 1 && layer != 2) throw ParseError(where + ": layer must be 1 or 2");
    node.layer = static_cast<int>(layer);
    node.demand = require_number(jn, "demand", where);
    raw.nodes.push_back(std::move(node));
  }

  for (const json& ja : require_array(doc, "arcs")) {
    RawArc arc;
    arc.tail = require_string(ja, "tail", "arc");
    arc.head = require_string(ja, "head", "arc");
    std::string where = "arc '" + arc.tail + "->" + arc.head + "'";
    arc.length = require_number(ja, "length_km", where);
    if (ja.contains("outsource_rate")) {
      if (!ja["outsource_rate"].is_number()) {
        throw ParseError(where + ": non-numeric field 'outsource_rate'");
      }
      arc.outsource_rate = ja["outsource_rate"].get<double>();
    }
    raw.arcs.push_back(std::move(arc));
  }

  for (const json& jf : require_array(doc, "fleet")) {
    VehicleType t;
    std::string where = "fleet entry";
    t.id = static_cast<int>(require_number(jf, "id", where));
    t.capacity = require_number(jf, "capacity_m3", where);
    t.unit_cost = require_number(jf, "cost_per_km", where);
    raw.fleet.push_back(t);
  }
  return raw;
}

std::string instance_to_json(const Instance& inst) {
  json doc;
  doc["origin"] = inst.nodes[0].name;
  doc["arc_limit"] = inst.arc_limit;

  json nodes = json::array();
  for (int v = 1; v < inst.num_nodes(); ++v) {
    json jn;
    jn["id"] = inst.nodes[v].name;
    jn["layer"] = inst.nodes[v].layer == Layer::Second ? 2 : 1;
    jn["demand"] = inst.nodes[v].demand;
    nodes.push_back(std::move(jn));
  }
  doc["nodes"] = std::move(nodes);

  json arcs = json::array();
  for (const Arc& arc : inst.arcs) {
    json ja;
    ja["tail"] = inst.nodes[arc.tail].name;
    ja["head"] = inst.nodes[arc.head].name;
    ja["length_km"] = arc.length;
    if (arc.kind == ArcKind::CrossLayer) ja["outsource_rate"] = arc.outsource_rate;
    arcs.push_back(std::move(ja));
  }
  doc["arcs"] = std::move(arcs);

  json fleet = json::array();
  for (const VehicleType& t : inst.fleet) {
    json jf;
    jf["id"] = t.id;
    jf["capacity_m3"] = t.capacity;
    jf["cost_per_km"] = t.unit_cost;
    fleet.push_back(std::move(jf));
  }
  doc["fleet"] = std::move(fleet);
  return doc.dump(2) + "\n";
}

Instance parse_instance(const std::string& text) {
  return validate_or_throw(instance_from_json(text));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace lpstcn
