#pragma once

#include <stdexcept>
#include <string>

#include "lpstcn/graph.hpp"

namespace lpstcn {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Reads the instance JSON document:
///   { "origin": "o",
///     "nodes": [{"id": "...", "layer": 1|2, "demand": num}, ...],
///     "arcs":  [{"tail": "...", "head": "...", "length_km": num,
///                "outsource_rate": num (cross-layer arcs only)}, ...],
///     "fleet": [{"id": 1.., "capacity_m3": num, "cost_per_km": num}, ...],
///     "arc_limit": int }
/// Throws ParseError naming the offending field.
RawInstance instance_from_json(const std::string& text);

/// Canonical serialization: parse(instance_to_json(i)) serializes back
/// byte-identically.
std::string instance_to_json(const Instance& inst);

/// instance_from_json followed by validation. Throws ParseError or
/// ValidationError.
Instance parse_instance(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace lpstcn
