#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gluing/error.hpp"
#include "gluing/graph.hpp"

namespace gluing {

enum class ColorKind { loop, nonloop };

inline std::string_view to_string(ColorKind k) { return k == ColorKind::loop ? "loop" : "nonloop"; }

/// A color together with the boundary of its replacement graph: the pair (iota, tau)
/// for non-loop colors, the single vertex lambda for loop colors.
struct ColorSpec {
  std::string id;
  ColorKind kind = ColorKind::nonloop;
  std::string iota;
  std::string tau;
  std::string lambda;

  bool is_boundary(std::string_view v) const {
    return kind == ColorKind::loop ? v == lambda : (v == iota || v == tau);
  }

  friend bool operator==(const ColorSpec&, const ColorSpec&) = default;
};

struct ReplacementSystem {
  std::vector<ColorSpec> colors;
  ColoredGraph base;
  std::map<std::string, ColoredGraph> replacements;

  const ColorSpec* find_color(std::string_view id) const {
    for (const auto& c : colors)
      if (c.id == id) return &c;
    return nullptr;
  }

  const ColoredGraph& replacement(const std::string& color) const {
    auto it = replacements.find(color);
    if (it == replacements.end()) throw InputError("no replacement graph for color " + color);
    return it->second;
  }

  /// Calls f(graph, owner) for the base graph (owner = nullptr) and every replacement graph.
  template <typename F>
  void for_each_graph(F&& f) const {
    f(base, static_cast<const ColorSpec*>(nullptr));
    for (const auto& c : colors) {
      auto it = replacements.find(c.id);
      if (it != replacements.end()) f(it->second, &c);
    }
  }

  friend bool operator==(const ReplacementSystem&, const ReplacementSystem&) = default;
};

// ---------------------------------------------------------------------------
// Structural validation

inline std::vector<std::string> validate_system(const ReplacementSystem& rs) {
  std::vector<std::string> errors;
  std::set<std::string> color_ids;
  for (const auto& c : rs.colors) {
    if (!is_valid_identifier(c.id)) errors.push_back("color '" + c.id + "': invalid identifier");
    if (c.id == "0") errors.push_back("color '0': reserved for the base graph");
    if (!color_ids.insert(c.id).second) errors.push_back("color '" + c.id + "': declared twice");
  }
  for (const auto& [id, g] : rs.replacements)
    if (!color_ids.count(id)) errors.push_back("replacement graph for undeclared color '" + id + "'");

  std::set<std::string> symbols;
  auto check_graph = [&](const ColoredGraph& g, const std::string& where) {
    std::set<std::string> seen;
    for (const auto& v : g.vertices) {
      if (!is_valid_identifier(v)) errors.push_back(where + ": vertex '" + v + "': invalid identifier");
      if (!seen.insert(v).second) errors.push_back(where + ": vertex '" + v + "' declared twice");
    }
    for (const auto& e : g.edges) {
      if (!is_valid_identifier(e.id)) errors.push_back(where + ": edge '" + e.id + "': invalid identifier");
      if (!symbols.insert(e.id).second)
        errors.push_back(where + ": edge '" + e.id + "': symbol already used (edge ids must be globally unique)");
      if (!seen.count(e.from)) errors.push_back(where + ": edge '" + e.id + "': unknown initial vertex '" + e.from + "'");
      if (!seen.count(e.to)) errors.push_back(where + ": edge '" + e.id + "': unknown terminal vertex '" + e.to + "'");
      if (!color_ids.count(e.color)) errors.push_back(where + ": edge '" + e.id + "': undeclared color '" + e.color + "'");
    }
  };

  check_graph(rs.base, "base");
  for (const auto& c : rs.colors) {
    auto it = rs.replacements.find(c.id);
    const std::string where = "replacement " + c.id;
    if (it == rs.replacements.end()) {
      errors.push_back("color '" + c.id + "': missing replacement graph");
      continue;
    }
    check_graph(it->second, where);
    const auto& g = it->second;
    if (c.kind == ColorKind::nonloop) {
      if (!g.has_vertex(c.iota)) errors.push_back(where + ": iota '" + c.iota + "' is not a vertex");
      if (!g.has_vertex(c.tau)) errors.push_back(where + ": tau '" + c.tau + "' is not a vertex");
      if (c.iota == c.tau) errors.push_back(where + ": boundary vertices iota and tau must be distinct");
    } else if (!g.has_vertex(c.lambda)) {
      errors.push_back(where + ": lambda '" + c.lambda + "' is not a vertex");
    }
  }
  return errors;
}

// ---------------------------------------------------------------------------
// Expanding conditions

struct ExpandingReport {
  bool no_isolated_vertices = true;
  bool no_boundary_edge = true;
  bool enough_structure = true;
  std::vector<std::string> violations;

  bool expanding() const { return no_isolated_vertices && no_boundary_edge && enough_structure; }
};

/// Checks the three expanding conditions. Meant for the system as given, before loop
/// normalization; loop colors (single boundary vertex) trivially satisfy condition 2.
inline ExpandingReport check_expanding(const ReplacementSystem& rs) {
  ExpandingReport report;
  auto isolated = [&](const ColoredGraph& g, const std::string& where) {
    for (const auto& v : g.vertices) {
      bool used = std::any_of(g.edges.begin(), g.edges.end(),
                              [&](const Edge& e) { return e.from == v || e.to == v; });
      if (!used) {
        report.no_isolated_vertices = false;
        report.violations.push_back("condition 1: " + where + ": vertex '" + v + "' is isolated");
      }
    }
  };
  isolated(rs.base, "base");
  for (const auto& c : rs.colors) {
    auto it = rs.replacements.find(c.id);
    if (it == rs.replacements.end()) continue;
    const auto& g = it->second;
    const std::string where = "replacement " + c.id;
    isolated(g, where);
    if (c.kind == ColorKind::nonloop) {
      for (const auto& e : g.edges) {
        if ((e.from == c.iota && e.to == c.tau) || (e.from == c.tau && e.to == c.iota)) {
          report.no_boundary_edge = false;
          report.violations.push_back("condition 2: " + where + ": edge '" + e.id + "' joins iota and tau");
        }
      }
    }
    if (g.edges.size() < 2) {
      report.enough_structure = false;
      report.violations.push_back("condition 3: " + where + ": fewer than two edges");
    }
    bool interior = std::any_of(g.vertices.begin(), g.vertices.end(),
                                [&](const std::string& v) { return !c.is_boundary(v); });
    if (!interior) {
      report.enough_structure = false;
      report.violations.push_back("condition 3: " + where + ": no vertex besides the boundary vertices");
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Loop assumption

struct ColorUsage {
  bool on_loops = false;
  bool on_nonloops = false;
};

inline std::map<std::string, ColorUsage> color_usage(const ReplacementSystem& rs) {
  std::map<std::string, ColorUsage> usage;
  for (const auto& c : rs.colors) usage[c.id];
  rs.for_each_graph([&](const ColoredGraph& g, const ColorSpec*) {
    for (const auto& e : g.edges) {
      auto& u = usage[e.color];
      (e.is_loop() ? u.on_loops : u.on_nonloops) = true;
    }
  });
  return usage;
}

/// Empty iff every color is used only on loops or only on non-loops, consistently with its
/// declared kind.
inline std::vector<std::string> check_loop_assumption(const ReplacementSystem& rs) {
  std::vector<std::string> violations;
  const auto usage = color_usage(rs);
  for (const auto& c : rs.colors) {
    const auto& u = usage.at(c.id);
    if (u.on_loops && u.on_nonloops) {
      violations.push_back("color '" + c.id + "' is used on both loops and non-loops");
    } else if (u.on_loops && c.kind == ColorKind::nonloop) {
      violations.push_back("color '" + c.id + "' is used only on loops but declared nonloop");
    } else if (u.on_nonloops && c.kind == ColorKind::loop) {
      violations.push_back("color '" + c.id + "' is used on non-loops but declared loop");
    }
  }
  return violations;
}

// ---------------------------------------------------------------------------
// Loop normalization

struct NormalizedSystem {
  ReplacementSystem system;
  /// Original edge symbol -> its color in the normalized system.
  std::map<std::string, std::string> recoloring;
  /// Symbols of copied replacement graphs -> the symbol they copy.
  std::map<std::string, std::string> copies;
};

namespace detail {

inline std::string fresh_name(std::string base, const std::set<std::string>& taken) {
  while (taken.count(base)) base += '\'';
  return base;
}

// Merges vertex `from` into `into` (identifying the two boundary vertices of a loop color).
inline void merge_vertex(ColoredGraph& g, const std::string& from, const std::string& into) {
  std::erase(g.vertices, from);
  for (auto& e : g.edges) {
    if (e.from == from) e.from = into;
    if (e.to == from) e.to = into;
  }
}

}  // namespace detail

/// Splits every color used on both loops and non-loops into a non-loop color (keeping the
/// id and the original symbols) and a loop color "<c>_lp" whose replacement graph is a copy
/// with iota and tau identified into lambda. Colors used only on loops become loop colors.
inline NormalizedSystem normalize_loops(const ReplacementSystem& rs) {
  if (auto errors = validate_system(rs); !errors.empty())
    throw InputError("cannot normalize an invalid system: " + errors.front());
  if (auto report = check_expanding(rs); !report.expanding())
    throw InputError("cannot normalize a non-expanding system: " + report.violations.front());

  const auto usage = color_usage(rs);
  std::set<std::string> taken_colors;
  std::set<std::string> taken_symbols;
  for (const auto& c : rs.colors) taken_colors.insert(c.id);
  rs.for_each_graph([&](const ColoredGraph& g, const ColorSpec*) {
    for (const auto& e : g.edges) taken_symbols.insert(e.id);
  });

  std::map<std::string, std::string> loop_split;  // mixed color -> its new loop color
  for (const auto& c : rs.colors) {
    const auto& u = usage.at(c.id);
    if (u.on_nonloops && c.kind == ColorKind::loop)
      throw InputError("color '" + c.id + "' is declared loop but used on non-loop edges");
    if (u.on_loops && u.on_nonloops) {
      auto name = detail::fresh_name(c.id + "_lp", taken_colors);
      taken_colors.insert(name);
      loop_split[c.id] = name;
    }
  }

  auto recolor = [&](ColoredGraph& g) {
    for (auto& e : g.edges) {
      auto it = loop_split.find(e.color);
      if (it != loop_split.end() && e.is_loop()) e.color = it->second;
    }
  };

  NormalizedSystem out;
  auto& ns = out.system;
  ns.base = rs.base;
  recolor(ns.base);

  for (const auto& c : rs.colors) {
    const auto& u = usage.at(c.id);
    ColoredGraph g = rs.replacements.at(c.id);
    recolor(g);
    ColorSpec spec = c;
    if (c.kind == ColorKind::nonloop && u.on_loops && !u.on_nonloops) {
      spec.kind = ColorKind::loop;
      spec.lambda = c.iota;
      spec.iota.clear();
      spec.tau.clear();
      detail::merge_vertex(g, c.tau, c.iota);
    }
    ns.colors.push_back(spec);
    ns.replacements[spec.id] = std::move(g);

    auto split = loop_split.find(c.id);
    if (split == loop_split.end()) continue;

    // Copy of the original graph for the loop half of a mixed color.
    const std::string& lp = split->second;
    const ColoredGraph& orig = rs.replacements.at(c.id);
    std::map<std::string, std::string> vertex_name;
    for (const auto& v : orig.vertices)
      vertex_name[v] = (v == c.iota || v == c.tau) ? c.iota + "_" + lp : v + "_" + lp;
    ColoredGraph copy;
    for (const auto& v : orig.vertices) {
      const auto& name = vertex_name[v];
      if (!copy.has_vertex(name)) copy.vertices.push_back(name);
    }
    for (const auto& e : orig.edges) {
      auto sym = detail::fresh_name(e.id + "_lp", taken_symbols);
      taken_symbols.insert(sym);
      out.copies[sym] = e.id;
      copy.edges.push_back({sym, vertex_name[e.from], vertex_name[e.to], e.color});
    }
    recolor(copy);
    ns.colors.push_back({lp, ColorKind::loop, "", "", c.iota + "_" + lp});
    ns.replacements[lp] = std::move(copy);
  }

  auto record = [&](const ColoredGraph& g) {
    for (const auto& e : g.edges) out.recoloring[e.id] = e.color;
  };
  record(ns.base);
  for (const auto& c : rs.colors) record(ns.replacements.at(c.id));
  // Drop copies from the recoloring map: it only covers original symbols.
  for (const auto& [sym, src] : out.copies) out.recoloring.erase(sym);
  return out;
}

// ---------------------------------------------------------------------------
// Indexed form used by the algorithms

using SymbolId = std::uint32_t;
using ColorIndex = std::uint32_t;
/// 0 is the base graph, c + 1 is the replacement graph of color index c.
using Slot = std::uint32_t;
using LocalVertex = std::uint32_t;

inline constexpr Slot kBaseSlot = 0;
inline constexpr Slot slot_of(ColorIndex c) { return c + 1; }

struct SlotGraph {
  std::vector<std::string> vertex_names;
  std::vector<SymbolId> edges;
  std::optional<LocalVertex> iota;
  std::optional<LocalVertex> tau;
  std::optional<LocalVertex> lambda;
};

struct SymbolInfo {
  std::string name;
  Slot owner = 0;
  LocalVertex from = 0;
  LocalVertex to = 0;
  ColorIndex color = 0;

  Slot target() const { return slot_of(color); }
  bool is_loop() const { return from == to; }
};

/// Integer view of a structurally valid replacement system.
class IndexedSystem {
 public:
  explicit IndexedSystem(const ReplacementSystem& rs) : source_(rs) {
    if (auto errors = validate_system(rs); !errors.empty())
      throw InputError("invalid replacement system: " + errors.front());
    loop_normalized_ = check_loop_assumption(rs).empty();

    std::unordered_map<std::string, ColorIndex> color_index;
    for (ColorIndex c = 0; c < rs.colors.size(); ++c) color_index[rs.colors[c].id] = c;

    auto add_graph = [&](const ColoredGraph& g, const ColorSpec* spec) {
      SlotGraph sg;
      std::unordered_map<std::string, LocalVertex> local;
      for (const auto& v : g.vertices) {
        local[v] = static_cast<LocalVertex>(sg.vertex_names.size());
        sg.vertex_names.push_back(v);
      }
      if (spec) {
        if (spec->kind == ColorKind::nonloop) {
          sg.iota = local.at(spec->iota);
          sg.tau = local.at(spec->tau);
        } else {
          sg.lambda = local.at(spec->lambda);
        }
      }
      const Slot slot = static_cast<Slot>(slots_.size());
      for (const auto& e : g.edges) {
        const auto id = static_cast<SymbolId>(symbols_.size());
        symbols_.push_back({e.id, slot, local.at(e.from), local.at(e.to), color_index.at(e.color)});
        by_name_[e.id] = id;
        sg.edges.push_back(id);
      }
      slots_.push_back(std::move(sg));
    };
    rs.for_each_graph(add_graph);
  }

  const ReplacementSystem& source() const { return source_; }
  bool loop_normalized() const { return loop_normalized_; }

  std::size_t color_count() const { return source_.colors.size(); }
  const ColorSpec& color(ColorIndex c) const { return source_.colors[c]; }
  bool is_loop_color(ColorIndex c) const { return color(c).kind == ColorKind::loop; }

  std::size_t slot_count() const { return slots_.size(); }
  const SlotGraph& slot(Slot s) const { return slots_[s]; }
  std::string slot_name(Slot s) const { return s == kBaseSlot ? "0" : color(s - 1).id; }

  std::size_t symbol_count() const { return symbols_.size(); }
  const SymbolInfo& symbol(SymbolId s) const { return symbols_[s]; }
  const std::vector<SymbolInfo>& symbols() const { return symbols_; }

  std::optional<SymbolId> find_symbol(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
  }

  SymbolId symbol_id(std::string_view name) const {
    auto s = find_symbol(name);
    if (!s) throw InputError("unknown symbol '" + std::string(name) + "'");
    return *s;
  }

  std::optional<ColorIndex> find_color(std::string_view id) const {
    for (ColorIndex c = 0; c < source_.colors.size(); ++c)
      if (source_.colors[c].id == id) return c;
    return std::nullopt;
  }

  /// Throws unless the system satisfies the loop assumption and the expanding conditions.
  void require_normalized_expanding() const {
    if (!loop_normalized_)
      throw InputError("system violates the loop assumption; normalize it first: " +
                       check_loop_assumption(source_).front());
    if (auto report = check_expanding(source_); !report.expanding())
      throw InputError("system is not expanding: " + report.violations.front());
  }

 private:
  ReplacementSystem source_;
  bool loop_normalized_ = false;
  std::vector<SlotGraph> slots_;
  std::vector<SymbolInfo> symbols_;
  std::unordered_map<std::string, SymbolId> by_name_;
};

}  // namespace gluing
