#pragma once

#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "gluing/adjacency.hpp"
#include "gluing/color_graph.hpp"
#include "gluing/disjoint_set.hpp"
#include "gluing/error.hpp"
#include "gluing/replacement_system.hpp"
#include "gluing/system_io.hpp"

namespace gluing {

inline constexpr std::size_t kDefaultDepthCap = 12;

/// The full expansion E_m. Edges are stored as a tree of (parent, symbol) layers so an
/// address is recovered by walking up; vertices are the classes of a disjoint-set over the
/// named copies (copy address, local vertex) created during expansion.
struct ExpandedGraph {
  struct Node {
    std::uint32_t parent = 0;
    SymbolId symbol = 0;
  };

  std::size_t depth = 0;
  std::vector<std::vector<Node>> layers;  // layers[d] holds the edges of E_d
  std::vector<std::size_t> from;          // vertex class of iota, per edge of E_depth
  std::vector<std::size_t> to;            // vertex class of tau, per edge of E_depth
  std::size_t vertex_count = 0;

  std::size_t edge_count() const { return layers.back().size(); }

  std::vector<SymbolId> address(std::size_t edge) const {
    std::vector<SymbolId> word(depth + 1);
    std::size_t k = edge;
    for (std::size_t d = depth + 1; d-- > 0;) {
      word[d] = layers[d][k].symbol;
      k = layers[d][k].parent;
    }
    return word;
  }

  AdjacencyDescriptor adjacency(std::size_t a, std::size_t b) const {
    return describe_adjacency(from[a], to[a], from[b], to[b]);
  }
};

inline ExpandedGraph full_expansion(const IndexedSystem& sys, std::size_t depth,
                                    std::size_t depth_cap = kDefaultDepthCap) {
  if (depth > depth_cap)
    throw InputError("expansion depth " + std::to_string(depth) + " exceeds the cap " + std::to_string(depth_cap));
  sys.require_normalized_expanding();

  ExpandedGraph g;
  g.depth = depth;
  DisjointSet copies(sys.slot(kBaseSlot).vertex_names.size());
  std::vector<std::size_t> ends_from;
  std::vector<std::size_t> ends_to;

  g.layers.emplace_back();
  for (auto s : sys.slot(kBaseSlot).edges) {
    g.layers[0].push_back({0, s});
    ends_from.push_back(sys.symbol(s).from);
    ends_to.push_back(sys.symbol(s).to);
  }

  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<ExpandedGraph::Node> next;
    std::vector<std::size_t> next_from;
    std::vector<std::size_t> next_to;
    const auto& layer = g.layers[d];
    for (std::size_t k = 0; k < layer.size(); ++k) {
      const auto& info = sys.symbol(layer[k].symbol);
      const auto& rg = sys.slot(info.target());
      const std::size_t base = copies.size();
      for (std::size_t v = 0; v < rg.vertex_names.size(); ++v) copies.add();
      if (rg.lambda) {
        copies.unite(base + *rg.lambda, ends_from[k]);
        copies.unite(base + *rg.lambda, ends_to[k]);
      } else {
        copies.unite(base + *rg.iota, ends_from[k]);
        copies.unite(base + *rg.tau, ends_to[k]);
      }
      for (auto child : rg.edges) {
        next.push_back({static_cast<std::uint32_t>(k), child});
        next_from.push_back(base + sys.symbol(child).from);
        next_to.push_back(base + sys.symbol(child).to);
      }
    }
    g.layers.push_back(std::move(next));
    ends_from = std::move(next_from);
    ends_to = std::move(next_to);
  }

  std::unordered_map<std::size_t, std::size_t> dense;
  for (std::size_t e = 0; e < copies.size(); ++e) dense.try_emplace(copies.find(e), dense.size());
  g.vertex_count = dense.size();
  for (std::size_t k = 0; k < ends_from.size(); ++k) {
    g.from.push_back(dense.at(copies.find(ends_from[k])));
    g.to.push_back(dense.at(copies.find(ends_to[k])));
  }
  return g;
}

/// Adjacency of two addressed edges of the same depth, computed by expanding only along
/// the two address walks. Copies of replacement graphs only add fresh interior vertices and
/// reattach existing endpoints, so expanding other edges never merges vertices of x or y.
inline AdjacencyDescriptor adjacency(const IndexedSystem& sys, std::span<const SymbolId> x,
                                     std::span<const SymbolId> y) {
  if (x.size() != y.size()) throw InputError("adjacency needs edge words of equal length");
  if (x.empty()) throw InputError("adjacency needs non-empty edge words");
  if (!is_edge_word(sys, x) || !is_edge_word(sys, y)) throw InputError("adjacency needs valid edge words");
  sys.require_normalized_expanding();

  struct Ends {
    std::uint64_t from;
    std::uint64_t to;
  };
  std::uint64_t fresh = sys.slot(kBaseSlot).vertex_names.size();
  auto child = [&](const Ends& parent, SymbolId s, std::uint64_t copy_base) {
    const auto& info = sys.symbol(s);
    const auto& rg = sys.slot(info.owner);
    auto map = [&](LocalVertex v) -> std::uint64_t {
      if (rg.lambda && v == *rg.lambda) return parent.from;
      if (rg.iota && v == *rg.iota) return parent.from;
      if (rg.tau && v == *rg.tau) return parent.to;
      return copy_base + v;
    };
    return Ends{map(info.from), map(info.to)};
  };

  Ends ex{sys.symbol(x[0]).from, sys.symbol(x[0]).to};
  Ends ey{sys.symbol(y[0]).from, sys.symbol(y[0]).to};
  bool common = x[0] == y[0];
  for (std::size_t k = 1; k < x.size(); ++k) {
    const auto width = sys.slot(sys.symbol(x[k]).owner).vertex_names.size();
    const std::uint64_t copy_x = fresh;
    fresh += width;
    std::uint64_t copy_y = copy_x;
    if (!common) {
      copy_y = fresh;
      fresh += sys.slot(sys.symbol(y[k]).owner).vertex_names.size();
    }
    ex = child(ex, x[k], copy_x);
    ey = child(ey, y[k], copy_y);
    common = common && x[k] == y[k];
  }
  return describe_adjacency(ex.from, ex.to, ey.from, ey.to);
}

inline AdjacencyDescriptor adjacency(const IndexedSystem& sys, std::span<const std::string> x,
                                     std::span<const std::string> y) {
  auto xi = to_ids(sys, x);
  auto yi = to_ids(sys, y);
  return adjacency(sys, xi, yi);
}

// ---------------------------------------------------------------------------
// Export

/// Symbols concatenated when all are single characters ("S01"), space separated otherwise.
inline std::string format_address(const IndexedSystem& sys, std::span<const SymbolId> word) {
  bool compact = true;
  for (auto s : word) compact = compact && sys.symbol(s).name.size() == 1;
  std::string out;
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (k && !compact) out += ' ';
    out += sys.symbol(word[k]).name;
  }
  return out;
}

namespace expansion_detail {

inline const char* palette(std::size_t k) {
  static const char* colors[] = {"blue", "red", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"};
  return colors[k % std::size(colors)];
}

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace expansion_detail

inline std::string expansion_to_dot(const IndexedSystem& sys, const ExpandedGraph& g) {
  using namespace expansion_detail;
  std::ostringstream out;
  out << "digraph E" << g.depth << " {\n";
  for (std::size_t v = 0; v < g.vertex_count; ++v) out << "  v" << v << " [shape=point];\n";
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto word = g.address(e);
    const auto color = sys.symbol(word.back()).color;
    out << "  v" << g.from[e] << " -> v" << g.to[e] << " [label=\"" << dot_escape(format_address(sys, word))
        << "\", color=\"" << palette(color) << "\", colorid=\"" << dot_escape(sys.color(color).id) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

/// Same schema as a graph of a replacement system; edge ids are addresses.
inline Json expansion_to_json(const IndexedSystem& sys, const ExpandedGraph& g) {
  ColoredGraph cg;
  for (std::size_t v = 0; v < g.vertex_count; ++v) cg.vertices.push_back("v" + std::to_string(v));
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto word = g.address(e);
    cg.edges.push_back({format_address(sys, word), "v" + std::to_string(g.from[e]), "v" + std::to_string(g.to[e]),
                        sys.color(sys.symbol(word.back()).color).id});
  }
  Json j = graph_to_json(cg);
  j["depth"] = g.depth;
  return j;
}

}  // namespace gluing
