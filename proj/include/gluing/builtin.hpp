#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gluing/error.hpp"
#include "gluing/replacement_system.hpp"

namespace gluing {

namespace builtin_detail {

inline ColoredGraph single_edge_base(const std::string& symbol, const std::string& color) {
  return {{"a", "b"}, {{symbol, "a", "b", color}}};
}

}  // namespace builtin_detail

/// Interval system: base edge S, replacement graph the path 0, 1.
inline ReplacementSystem interval_system() {
  ReplacementSystem rs;
  rs.colors = {{"1", ColorKind::nonloop, "i", "t", ""}};
  rs.base = builtin_detail::single_edge_base("S", "1");
  rs.replacements["1"] = {{"i", "m", "t"}, {{"0", "i", "m", "1"}, {"1", "m", "t", "1"}}};
  return rs;
}

/// Dendrite system D_n: a star of n edges leaving a center, edge 1 ending at iota and
/// edge n ending at tau.
inline ReplacementSystem dendrite_system(int n) {
  if (n < 3) throw InputError("dendrite requires n >= 3, got " + std::to_string(n));
  ReplacementSystem rs;
  rs.colors = {{"1", ColorKind::nonloop, "i", "t", ""}};
  rs.base = builtin_detail::single_edge_base("S", "1");
  ColoredGraph g;
  g.vertices = {"i", "c", "t"};
  g.edges.push_back({"1", "c", "i", "1"});
  for (int k = 2; k < n; ++k) {
    g.vertices.push_back("l" + std::to_string(k));
    g.edges.push_back({std::to_string(k), "c", "l" + std::to_string(k), "1"});
  }
  g.edges.push_back({std::to_string(n), "c", "t", "1"});
  rs.replacements["1"] = std::move(g);
  return rs;
}

/// The basilica as originally drawn: a single color used on the loops L, R, 2 and on the
/// non-loops 1, 3. Violates the loop assumption until normalized.
inline ReplacementSystem basilica_original_system() {
  ReplacementSystem rs;
  rs.colors = {{"1", ColorKind::nonloop, "i", "t", ""}};
  rs.base = {{"v"}, {{"L", "v", "v", "1"}, {"R", "v", "v", "1"}}};
  rs.replacements["1"] = {{"i", "c", "t"},
                          {{"1", "i", "c", "1"}, {"2", "c", "c", "1"}, {"3", "c", "t", "1"}}};
  return rs;
}

/// The basilica with a non-loop color 1 and a loop color 2.
inline ReplacementSystem basilica_system() {
  ReplacementSystem rs;
  rs.colors = {{"1", ColorKind::nonloop, "i", "t", ""}, {"2", ColorKind::loop, "", "", "l"}};
  rs.base = {{"v"}, {{"L", "v", "v", "2"}, {"R", "v", "v", "2"}}};
  rs.replacements["1"] = {{"i", "c", "t"},
                          {{"1", "i", "c", "1"}, {"2", "c", "c", "2"}, {"3", "c", "t", "1"}}};
  rs.replacements["2"] = {{"l", "c"},
                          {{"4", "l", "c", "1"}, {"5", "c", "c", "2"}, {"6", "c", "l", "1"}}};
  return rs;
}

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {"interval", "dendrite", "basilica-original", "basilica"};
  return names;
}

inline ReplacementSystem builtin(std::string_view name, std::optional<int> parameter = std::nullopt) {
  if (name == "interval") return interval_system();
  if (name == "dendrite") {
    if (!parameter) throw InputError("dendrite requires a parameter n >= 3");
    return dendrite_system(*parameter);
  }
  if (name == "basilica-original") return basilica_original_system();
  if (name == "basilica") return basilica_system();
  throw InputError("unknown builtin system '" + std::string(name) + "'");
}

/// Parses "name" or "name:parameter" (e.g. "dendrite:4").
inline ReplacementSystem builtin_from_spec(std::string_view spec) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) return builtin(spec);
  std::string arg(spec.substr(colon + 1));
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(arg, &used);
    if (used != arg.size()) throw std::invalid_argument(arg);
  } catch (const std::exception&) {
    throw InputError("bad builtin parameter '" + arg + "'");
  }
  return builtin(spec.substr(0, colon), n);
}

}  // namespace gluing
