#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

namespace gluing {

struct Edge {
  std::string id;
  std::string from;
  std::string to;
  std::string color;

  bool is_loop() const { return from == to; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Finite colored directed multigraph. Loops and parallel edges are allowed.
struct ColoredGraph {
  std::vector<std::string> vertices;
  std::vector<Edge> edges;

  bool has_vertex(std::string_view v) const {
    return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
  }

  const Edge* find_edge(std::string_view id) const {
    auto it = std::find_if(edges.begin(), edges.end(), [&](const Edge& e) { return e.id == id; });
    return it == edges.end() ? nullptr : &*it;
  }

  friend bool operator==(const ColoredGraph&, const ColoredGraph&) = default;
};

/// Identifiers end up in word literals and state labels, so they may not contain
/// whitespace or the punctuation those grammars use.
inline bool is_valid_identifier(std::string_view id) {
  if (id.empty()) return false;
  return std::none_of(id.begin(), id.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '(' || c == ')' || c == ';' ||
           c == ',' || c == '*' || c == '"';
  });
}

}  // namespace gluing
