#pragma once

// JSON form of replacement systems:
//
//   {
//     "colors": [{"id": "1", "kind": "nonloop"}, {"id": "2", "kind": "loop"}],
//     "base": {"vertices": ["v"], "edges": [{"id": "L", "from": "v", "to": "v", "color": "2"}]},
//     "replacements": {
//       "1": {"vertices": [...], "edges": [...], "iota": "i", "tau": "t"},
//       "2": {"vertices": [...], "edges": [...], "lambda": "l"}
//     }
//   }
//
// Output keys are sorted, arrays keep their order, so write(read(write(rs))) is byte-stable.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "gluing/error.hpp"
#include "gluing/replacement_system.hpp"

namespace gluing {

using Json = nlohmann::json;

inline Json graph_to_json(const ColoredGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges) edges.push_back({{"id", e.id}, {"from", e.from}, {"to", e.to}, {"color", e.color}});
  return {{"vertices", g.vertices}, {"edges", edges}};
}

inline Json system_to_json(const ReplacementSystem& rs) {
  Json colors = Json::array();
  Json replacements = Json::object();
  for (const auto& c : rs.colors) {
    colors.push_back({{"id", c.id}, {"kind", std::string(to_string(c.kind))}});
    Json g = graph_to_json(rs.replacement(c.id));
    if (c.kind == ColorKind::loop) {
      g["lambda"] = c.lambda;
    } else {
      g["iota"] = c.iota;
      g["tau"] = c.tau;
    }
    replacements[c.id] = std::move(g);
  }
  return {{"colors", colors}, {"base", graph_to_json(rs.base)}, {"replacements", replacements}};
}

namespace io_detail {

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing key '" + key + "'");
  return j.at(key);
}

inline std::string string_field(const Json& j, const char* key, const std::string& where) {
  const auto& v = field(j, key, where);
  if (!v.is_string()) throw InputError(where + ": key '" + key + "' must be a string");
  return v.get<std::string>();
}

inline ColoredGraph graph_from_json(const Json& j, const std::string& where) {
  ColoredGraph g;
  const auto& vertices = field(j, "vertices", where);
  if (!vertices.is_array()) throw InputError(where + ": 'vertices' must be an array");
  for (const auto& v : vertices) {
    if (!v.is_string()) throw InputError(where + ": vertex ids must be strings");
    g.vertices.push_back(v.get<std::string>());
  }
  const auto& edges = field(j, "edges", where);
  if (!edges.is_array()) throw InputError(where + ": 'edges' must be an array");
  for (const auto& e : edges) {
    const std::string w = where + " edge";
    g.edges.push_back({string_field(e, "id", w), string_field(e, "from", w), string_field(e, "to", w),
                       string_field(e, "color", w)});
  }
  return g;
}

}  // namespace io_detail

/// Parses the JSON form. Only the schema is checked here; run validate_system for the rest.
inline ReplacementSystem system_from_json(const Json& j) {
  using namespace io_detail;
  ReplacementSystem rs;
  const auto& colors = field(j, "colors", "system");
  if (!colors.is_array()) throw InputError("system: 'colors' must be an array");
  for (const auto& c : colors) {
    ColorSpec spec;
    spec.id = string_field(c, "id", "color");
    const auto kind = string_field(c, "kind", "color " + spec.id);
    if (kind == "loop") {
      spec.kind = ColorKind::loop;
    } else if (kind == "nonloop") {
      spec.kind = ColorKind::nonloop;
    } else {
      throw InputError("color " + spec.id + ": kind must be \"loop\" or \"nonloop\"");
    }
    rs.colors.push_back(spec);
  }
  rs.base = graph_from_json(field(j, "base", "system"), "base");
  const auto& replacements = field(j, "replacements", "system");
  if (!replacements.is_object()) throw InputError("system: 'replacements' must be an object");
  for (const auto& [id, g] : replacements.items()) {
    const std::string where = "replacement " + id;
    rs.replacements[id] = graph_from_json(g, where);
    for (auto& c : rs.colors) {
      if (c.id != id) continue;
      if (c.kind == ColorKind::loop) {
        c.lambda = string_field(g, "lambda", where);
      } else {
        c.iota = string_field(g, "iota", where);
        c.tau = string_field(g, "tau", where);
      }
    }
  }
  return rs;
}

inline std::string write_system(const ReplacementSystem& rs) { return system_to_json(rs).dump(2) + "\n"; }

inline ReplacementSystem read_system(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return system_from_json(j);
}

inline ReplacementSystem load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return read_system(buf.str());
}

}  // namespace gluing
