#include <gtest/gtest.h>

#include "support.hpp"

using namespace gluing;
using namespace gluing::testing;

namespace {

std::vector<ReplacementSystem> sample_systems(std::uint64_t seed, int count) {
  std::vector<ReplacementSystem> out;
  for (int k = 0; k < count; ++k) {
    Rng rng = trial_rng(seed, k);
    out.push_back(random_system(rng, {3, 5, 6, false}));
  }
  return out;
}

std::size_t find_edge(const IndexedSystem& sys, const ExpandedGraph& g, const std::string& address) {
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if (format_address(sys, g.address(e)) == address) return e;
  ADD_FAILURE() << "no edge " << address;
  return 0;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  for (char c : s) out.emplace_back(1, c);
  return out;
}

}  // namespace

TEST(FullExpansion, DepthZeroIsTheBaseGraph) {
  for (const auto& rs : {interval_system(), basilica_system(), dendrite_system(4)}) {
    const IndexedSystem sys(rs);
    const auto g = full_expansion(sys, 0);
    ASSERT_EQ(g.edge_count(), rs.base.edges.size());
    EXPECT_EQ(g.vertex_count, rs.base.vertices.size());
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const auto& be = rs.base.edges[e];
      EXPECT_EQ(format_address(sys, g.address(e)), be.id);
      EXPECT_EQ(sys.slot(kBaseSlot).vertex_names[g.from[e]], be.from);
      EXPECT_EQ(sys.slot(kBaseSlot).vertex_names[g.to[e]], be.to);
    }
  }
}

TEST(FullExpansion, IntervalDepthTwoIsAPath) {
  const IndexedSystem sys(interval_system());
  const auto g = full_expansion(sys, 2);
  ASSERT_EQ(g.edge_count(), 4u);
  EXPECT_EQ(g.vertex_count, 5u);
  const std::vector<std::string> order = {"S00", "S01", "S10", "S11"};
  std::vector<std::size_t> e;
  for (const auto& a : order) e.push_back(find_edge(sys, g, a));
  for (std::size_t k = 0; k + 1 < e.size(); ++k) EXPECT_EQ(g.to[e[k]], g.from[e[k + 1]]);
  std::set<std::size_t> vertices;
  for (auto x : e) vertices.insert(g.from[x]);
  vertices.insert(g.to[e.back()]);
  EXPECT_EQ(vertices.size(), 5u);
}

TEST(FullExpansion, BasilicaDepthOne) {
  const IndexedSystem sys(basilica_system());
  const auto g = full_expansion(sys, 1);
  std::set<std::string> addresses;
  for (std::size_t e = 0; e < g.edge_count(); ++e) addresses.insert(format_address(sys, g.address(e)));
  EXPECT_EQ(addresses, (std::set<std::string>{"L4", "L5", "L6", "R4", "R5", "R6"}));
  // Both loops sit on one vertex, each spawning one new center.
  EXPECT_EQ(g.vertex_count, 3u);
  const auto l4 = find_edge(sys, g, "L4");
  const auto r6 = find_edge(sys, g, "R6");
  EXPECT_EQ(g.from[l4], g.to[r6]);
}

TEST(FullExpansion, CountLaw) {
  const IndexedSystem interval(interval_system());
  const IndexedSystem basilica(basilica_system());
  std::size_t pow2 = 1;
  std::size_t pow3 = 1;
  for (std::size_t m = 0; m <= 8; ++m) {
    EXPECT_EQ(full_expansion(interval, m).edge_count(), pow2) << m;
    EXPECT_EQ(full_expansion(basilica, m).edge_count(), 2 * pow3) << m;
    pow2 *= 2;
    pow3 *= 3;
  }
  for (int n = 3; n <= 6; ++n) {
    const IndexedSystem dendrite(dendrite_system(n));
    std::size_t pow = 1;
    for (std::size_t m = 0; m <= 5; ++m, pow *= n) EXPECT_EQ(full_expansion(dendrite, m).edge_count(), pow);
  }
}

TEST(FullExpansion, RecursionOnRandomSystems) {
  for (const auto& rs : sample_systems(3, 40)) {
    const IndexedSystem sys(rs);
    auto prev = full_expansion(sys, 0);
    for (std::size_t m = 1; m <= 4; ++m) {
      const auto g = full_expansion(sys, m);
      std::size_t expected = 0;
      for (std::size_t e = 0; e < prev.edge_count(); ++e)
        expected += sys.slot(sys.symbol(prev.address(e).back()).target()).edges.size();
      EXPECT_EQ(g.edge_count(), expected);
      if (g.edge_count() > 20000) break;
      prev = g;
    }
  }
}

TEST(FullExpansion, ChildrenAttachToParentEndpoints) {
  for (const auto& rs : sample_systems(4, 30)) {
    const IndexedSystem sys(rs);
    const auto parent = full_expansion(sys, 2);
    const auto g = full_expansion(sys, 3);
    std::map<std::vector<SymbolId>, std::size_t> by_address;
    for (std::size_t e = 0; e < parent.edge_count(); ++e) by_address[parent.address(e)] = e;
    // Children touching a boundary vertex meet exactly when the parent endpoints they sit on do.
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      auto word = g.address(e);
      const SymbolId last = word.back();
      word.pop_back();
      const auto p = by_address.at(word);
      const auto& info = sys.symbol(last);
      const auto& rg = sys.slot(info.owner);
      for (std::size_t f = 0; f < g.edge_count(); ++f) {
        auto other = g.address(f);
        const SymbolId olast = other.back();
        other.pop_back();
        const auto q = by_address.at(other);
        const auto& oinfo = sys.symbol(olast);
        const auto& org = sys.slot(oinfo.owner);
        auto parent_end = [&](const SlotGraph& sg, LocalVertex v, std::size_t edge) -> std::optional<std::size_t> {
          if (sg.lambda && v == *sg.lambda) return parent.from[edge];
          if (sg.iota && v == *sg.iota) return parent.from[edge];
          if (sg.tau && v == *sg.tau) return parent.to[edge];
          return std::nullopt;
        };
        const auto a = parent_end(rg, info.from, p);
        const auto b = parent_end(org, oinfo.from, q);
        if (a && b) {
          EXPECT_EQ(*a == *b, g.from[e] == g.from[f]);
        }
      }
      if (e > 60) break;
    }
  }
}

TEST(FullExpansion, DepthCap) {
  const IndexedSystem sys(interval_system());
  EXPECT_THROW(full_expansion(sys, kDefaultDepthCap + 1), InputError);
  EXPECT_THROW(full_expansion(sys, 3, 2), InputError);
  EXPECT_NO_THROW(full_expansion(sys, 2, 2));
}

TEST(FullExpansion, RequiresNormalizedExpanding) {
  EXPECT_THROW(full_expansion(IndexedSystem(basilica_original_system()), 1), InputError);
  EXPECT_THROW(full_expansion(IndexedSystem(load_system(data_path("systems/single_edge.json"))), 1), InputError);
}

TEST(Adjacency, Examples) {
  const IndexedSystem interval(interval_system());
  const IndexedSystem basilica(basilica_system());
  auto pair = [](const AdjacencyDescriptor& d) { return d.to_string(); };
  EXPECT_EQ(pair(adjacency(interval, split("S0"), split("S1"))), "(in,out)");
  EXPECT_EQ(pair(adjacency(basilica, split("L"), split("R"))), "(lp,lp)");
  EXPECT_EQ(pair(adjacency(basilica, split("R4"), split("R6"))), "(db+,db-)");
  EXPECT_EQ(pair(adjacency(interval, split("S00"), split("S11"))), "none");
  EXPECT_EQ(adjacency(interval, split("S00"), split("S11")).classify(), AdjacencyClass::not_adjacent);
  EXPECT_EQ(pair(adjacency(interval, split("S1"), split("S0"))), "(out,in)");
  EXPECT_EQ(pair(adjacency(basilica, split("L4"), split("R4"))), "(out,out)");
  EXPECT_EQ(pair(adjacency(basilica, split("L5"), split("L4"))), "(lp,in)");
}

TEST(Adjacency, Errors) {
  const IndexedSystem sys(interval_system());
  EXPECT_THROW(adjacency(sys, split("S0"), split("S")), InputError);
  EXPECT_THROW(adjacency(sys, std::vector<std::string>{}, std::vector<std::string>{}), InputError);
  EXPECT_THROW(adjacency(sys, split("0S"), split("S0")), InputError);
  EXPECT_THROW(adjacency(sys, split("S2"), split("S0")), InputError);
}

TEST(Adjacency, WalkLocalMatchesFullExpansion) {
  std::vector<ReplacementSystem> systems = {interval_system(), basilica_system(), dendrite_system(3),
                                            normalize_loops(basilica_original_system()).system};
  for (const auto& rs : sample_systems(7, 25)) systems.push_back(rs);
  for (const auto& rs : systems) {
    const IndexedSystem sys(rs);
    for (std::size_t m = 0; m <= 3; ++m) {
      const auto g = full_expansion(sys, m);
      if (g.edge_count() > 400) break;
      std::vector<std::vector<SymbolId>> address(g.edge_count());
      for (std::size_t e = 0; e < g.edge_count(); ++e) address[e] = g.address(e);
      for (std::size_t a = 0; a < g.edge_count(); ++a)
        for (std::size_t b = 0; b < g.edge_count(); ++b)
          ASSERT_EQ(adjacency(sys, address[a], address[b]), g.adjacency(a, b))
              << format_address(sys, address[a]) << " vs " << format_address(sys, address[b]) << " depth " << m;
    }
  }
}

TEST(Adjacency, WalkLocalMatchesFullExpansionOnBuiltinsToDepthFive) {
  for (const auto& rs : {interval_system(), basilica_system(), dendrite_system(3), dendrite_system(4)}) {
    const IndexedSystem sys(rs);
    for (std::size_t m = 0; m <= 5; ++m) {
      const auto g = full_expansion(sys, m);
      std::vector<std::vector<SymbolId>> address(g.edge_count());
      for (std::size_t e = 0; e < g.edge_count(); ++e) address[e] = g.address(e);
      std::size_t mismatches = 0;
      for (std::size_t a = 0; a < g.edge_count(); ++a)
        for (std::size_t b = 0; b < g.edge_count(); ++b) mismatches += adjacency(sys, address[a], address[b]) != g.adjacency(a, b);
      EXPECT_EQ(mismatches, 0u) << "depth " << m;
    }
  }
}

TEST(Adjacency, SwapSymmetry) {
  const IndexedSystem sys(basilica_system());
  const auto g = full_expansion(sys, 2);
  for (std::size_t a = 0; a < g.edge_count(); ++a)
    for (std::size_t b = 0; b < g.edge_count(); ++b) {
      const auto x = g.address(a);
      const auto y = g.address(b);
      EXPECT_EQ(adjacency(sys, y, x), adjacency(sys, x, y).swapped());
    }
}

TEST(Adjacency, ExtensionsOfNonAdjacentEdgesStayApart) {
  const IndexedSystem sys(basilica_system());
  const auto g = full_expansion(sys, 3);
  for (std::size_t a = 0; a < g.edge_count(); ++a)
    for (std::size_t b = 0; b < g.edge_count(); ++b) {
      auto x = g.address(a);
      auto y = g.address(b);
      if (!adjacency(sys, x, y).adjacent()) continue;
      x.pop_back();
      y.pop_back();
      EXPECT_TRUE(adjacency(sys, x, y).adjacent());
    }
}

TEST(Adjacency, EveryDescriptorHasExactlyOneClass) {
  // All 64 flag patterns that arise from four vertices: classify() is total, and types()
  // is empty exactly for the non-adjacent class.
  for (int v = 0; v < 256; ++v) {
    const int ia = v & 3, ta = (v >> 2) & 3, ib = (v >> 4) & 3, tb = (v >> 6) & 3;
    const auto d = describe_adjacency(ia, ta, ib, tb);
    EXPECT_EQ(d.types().has_value(), d.classify() != AdjacencyClass::not_adjacent);
    EXPECT_EQ(d.adjacent(), d.types().has_value());
    if (d.classify() == AdjacencyClass::parallel_opposite) {
      EXPECT_FALSE(d.a_loop || d.b_loop);
    }
  }
}

TEST(ClassifyLocal, Examples) {
  const IndexedSystem interval(interval_system());
  const IndexedSystem basilica(basilica_system());
  EXPECT_EQ(classify_local(interval, "1", "0", "1").to_string(), "(in,out)");
  EXPECT_EQ(classify_local(interval, "1", "1", "0").to_string(), "(out,in)");
  EXPECT_EQ(classify_local(basilica, "1", "1", "2").to_string(), "(in,lp)");
  EXPECT_EQ(classify_local(basilica, "2", "4", "5").to_string(), "(in,lp)");
  EXPECT_EQ(classify_local(basilica, "2", "4", "6").to_string(), "(db+,db-)");
  EXPECT_EQ(classify_local(basilica, "0", "L", "R").to_string(), "(lp,lp)");
  EXPECT_EQ(classify_local(basilica, "1", "1", "3").to_string(), "(in,out)");
  const IndexedSystem dendrite(dendrite_system(4));
  EXPECT_EQ(classify_local(dendrite, "1", "1", "2").to_string(), "(out,out)");
}

TEST(ClassifyLocal, Errors) {
  const IndexedSystem sys(basilica_system());
  EXPECT_THROW(classify_local(sys, "1", "1", "1"), InputError);
  EXPECT_THROW(classify_local(sys, "1", "1", "4"), InputError);
  EXPECT_THROW(classify_local(sys, "7", "1", "2"), InputError);
  EXPECT_THROW(classify_local(sys, "1", "1", "x"), InputError);
}

TEST(ClassifyLocal, AgreesWithDepthOneAdjacencyUnderACommonParent) {
  for (const auto& rs : sample_systems(11, 40)) {
    const IndexedSystem sys(rs);
    for (SymbolId p = 0; p < sys.symbol_count(); ++p) {
      if (sys.symbol(p).owner != kBaseSlot) continue;
      const auto& children = sys.slot(sys.symbol(p).target()).edges;
      for (auto a : children)
        for (auto b : children) {
          if (a == b) continue;
          const std::vector<SymbolId> x = {p, a};
          const std::vector<SymbolId> y = {p, b};
          EXPECT_EQ(classify_local(sys, sys.symbol(p).target(), a, b).classify(),
                    adjacency(sys, x, y).classify());
        }
    }
  }
}

TEST(ExpansionExport, Dot) {
  const IndexedSystem sys(basilica_system());
  const auto g = full_expansion(sys, 1);
  const auto dot = expansion_to_dot(sys, g);
  std::size_t arrows = 0;
  for (std::size_t at = dot.find("->"); at != std::string::npos; at = dot.find("->", at + 1)) ++arrows;
  EXPECT_EQ(arrows, 6u);
  EXPECT_NE(dot.find("label=\"L4\""), std::string::npos);
  EXPECT_EQ(dot.rfind("digraph E1 {", 0), 0u);
}

TEST(ExpansionExport, JsonReadsBackAsAGraph) {
  const IndexedSystem sys(interval_system());
  const auto g = full_expansion(sys, 3);
  const auto j = expansion_to_json(sys, g);
  EXPECT_EQ(j["depth"], 3);
  const auto graph = io_detail::graph_from_json(j, "expansion");
  EXPECT_EQ(graph.edges.size(), 8u);
  EXPECT_EQ(graph.vertices.size(), 9u);
  EXPECT_EQ(graph.edges.front().id, "S000");
}
