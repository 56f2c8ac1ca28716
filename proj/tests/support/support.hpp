#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "gluing/gluing.hpp"

namespace gluing::testing {

inline std::string data_path(const std::string& name) { return std::string(GLUING_TEST_DATA) + "/" + name; }

inline UPWord W(const std::string& text) { return parse_upword(text); }

inline IndexedSystem indexed(const ReplacementSystem& rs) { return IndexedSystem(rs); }

// ---------------------------------------------------------------------------
// Brute-force isomorphism of replacement systems: a bijection of colors (kinds kept), and
// per graph a bijection of vertices (boundary kept) and of edges (endpoints and mapped
// colors kept). Returns the edge symbol map of the first isomorphism found.

namespace iso_detail {

using SymbolMap = std::map<std::string, std::string>;

inline std::optional<SymbolMap> graph_iso(const ColoredGraph& a, const ColoredGraph& b,
                                          const std::map<std::string, std::string>& color_map,
                                          const std::map<std::string, std::string>& fixed) {
  if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size()) return std::nullopt;
  std::vector<std::string> image = b.vertices;
  std::sort(image.begin(), image.end());
  do {
    std::map<std::string, std::string> vmap;
    for (std::size_t k = 0; k < a.vertices.size(); ++k) vmap[a.vertices[k]] = image[k];
    bool ok = true;
    for (const auto& [va, vb] : fixed) ok = ok && vmap[va] == vb;
    if (!ok) continue;
    // Edges with the same mapped endpoints and color are interchangeable, so greedy
    // matching succeeds whenever any matching does.
    std::multimap<std::tuple<std::string, std::string, std::string>, std::string> pool;
    for (const auto& e : b.edges) pool.emplace(std::tuple{e.from, e.to, e.color}, e.id);
    SymbolMap smap;
    for (const auto& e : a.edges) {
      auto it = pool.find({vmap[e.from], vmap[e.to], color_map.at(e.color)});
      if (it == pool.end()) {
        ok = false;
        break;
      }
      smap[e.id] = it->second;
      pool.erase(it);
    }
    if (ok) return smap;
  } while (std::next_permutation(image.begin(), image.end()));
  return std::nullopt;
}

}  // namespace iso_detail

inline std::optional<std::map<std::string, std::string>> isomorphism(const ReplacementSystem& a,
                                                                      const ReplacementSystem& b) {
  if (a.colors.size() != b.colors.size()) return std::nullopt;
  std::vector<std::size_t> perm(b.colors.size());
  for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
  do {
    std::map<std::string, std::string> cmap;
    bool ok = true;
    for (std::size_t k = 0; k < perm.size(); ++k) {
      ok = ok && a.colors[k].kind == b.colors[perm[k]].kind;
      cmap[a.colors[k].id] = b.colors[perm[k]].id;
    }
    if (!ok) continue;
    auto smap = iso_detail::graph_iso(a.base, b.base, cmap, {});
    if (!smap) continue;
    for (std::size_t k = 0; k < perm.size() && smap; ++k) {
      const auto& ca = a.colors[k];
      const auto& cb = b.colors[perm[k]];
      std::map<std::string, std::string> fixed;
      if (ca.kind == ColorKind::loop) {
        fixed[ca.lambda] = cb.lambda;
      } else {
        fixed[ca.iota] = cb.iota;
        fixed[ca.tau] = cb.tau;
      }
      auto part = iso_detail::graph_iso(a.replacement(ca.id), b.replacement(cb.id), cmap, fixed);
      if (!part) {
        smap.reset();
        break;
      }
      smap->insert(part->begin(), part->end());
    }
    if (smap) return smap;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Interval system: the sequence S w1 w2 ... is the point sum w_k 2^-k of [0, 1], and two
// sequences are glued exactly when they name the same point.

struct Dyadic {
  // value = num / den, exact
  __int128 num = 0;
  __int128 den = 1;
};

inline Dyadic interval_point(const UPWord& w) {
  if (w.preperiod.empty() || w.preperiod.front() != "S") throw InputError("interval words start with S");
  auto bit = [](const std::string& s) -> __int128 {
    if (s == "0") return 0;
    if (s == "1") return 1;
    throw InputError("interval digit expected, got " + s);
  };
  __int128 pre = 0;
  for (std::size_t k = 1; k < w.preperiod.size(); ++k) pre = pre * 2 + bit(w.preperiod[k]);
  __int128 per = 0;
  for (const auto& s : w.period) per = per * 2 + bit(s);
  const __int128 a = __int128(1) << (w.preperiod.size() - 1);
  const __int128 b = (__int128(1) << w.period.size()) - 1;
  return {pre * b + per, a * b};
}

inline bool same_point(const Dyadic& x, const Dyadic& y) { return x.num * y.den == y.num * x.den; }

inline bool interval_glued(const UPWord& x, const UPWord& y) {
  return same_point(interval_point(x), interval_point(y));
}

// ---------------------------------------------------------------------------
// Table data files

struct TableRow {
  std::string from;
  std::string a;
  std::string b;
  std::string to;

  friend auto operator<=>(const TableRow&, const TableRow&) = default;
};

inline std::string trim_ws(std::string s) {
  const auto first = s.find_first_not_of(" \t");
  const auto last = s.find_last_not_of(" \t\r");
  return first == std::string::npos ? "" : s.substr(first, last - first + 1);
}

/// Reads "from | a b | to" rows.
inline std::vector<TableRow> read_transition_table(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open " + path);
  std::vector<TableRow> rows;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto p1 = line.find('|');
    auto p2 = line.find('|', p1 + 1);
    TableRow r;
    r.from = trim_ws(line.substr(0, p1));
    std::istringstream mid(line.substr(p1 + 1, p2 - p1 - 1));
    mid >> r.a >> r.b;
    r.to = trim_ws(line.substr(p2 + 1));
    rows.push_back(r);
  }
  return rows;
}

inline std::vector<TableRow> transition_rows(const GluingAutomaton& aut) {
  std::vector<TableRow> rows;
  for (const auto& t : aut.transitions())
    rows.push_back({aut.label(t.from), aut.alphabet()[t.letter.a], aut.alphabet()[t.letter.b], aut.label(t.to)});
  return rows;
}

/// Every ultimately periodic word whose preperiod and period are within the bounds and
/// which lies in the symbol space, canonicalized and deduplicated.
inline std::vector<IdWord> all_words(const IndexedSystem& sys, std::size_t max_pre, std::size_t max_per) {
  std::set<IdWord> out;
  std::vector<SymbolId> cur;
  const std::size_t limit = max_pre + max_per;
  auto rec = [&](auto&& self, Slot at) -> void {
    for (std::size_t pre = 0; pre <= std::min(cur.size(), max_pre); ++pre) {
      const std::size_t per = cur.size() - pre;
      if (per == 0 || per > max_per) continue;
      IdWord w{{cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(pre)},
               {cur.begin() + static_cast<std::ptrdiff_t>(pre), cur.end()}};
      if (in_symbol_space(sys, w)) out.insert(canonical(w));
    }
    if (cur.size() == limit) return;
    for (SymbolId s = 0; s < sys.symbol_count(); ++s) {
      if (sys.symbol(s).owner != at) continue;
      cur.push_back(s);
      self(self, sys.symbol(s).target());
      cur.pop_back();
    }
  };
  rec(rec, kBaseSlot);
  return {out.begin(), out.end()};
}

}  // namespace gluing::testing
