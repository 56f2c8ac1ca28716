#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "gluing/error.hpp"
#include "gluing/replacement_system.hpp"

namespace gluing {

/// How an edge meets a shared vertex (enters, leaves, loops), or how two edges are
/// parallel (same or opposite orientation).
enum class AdjacencyType { in, out, lp, db_plus, db_minus };

inline std::string_view to_string(AdjacencyType t) {
  switch (t) {
    case AdjacencyType::in: return "in";
    case AdjacencyType::out: return "out";
    case AdjacencyType::lp: return "lp";
    case AdjacencyType::db_plus: return "db+";
    case AdjacencyType::db_minus: return "db-";
  }
  return "?";
}

inline std::optional<AdjacencyType> adjacency_type_from_string(std::string_view s) {
  if (s == "in") return AdjacencyType::in;
  if (s == "out") return AdjacencyType::out;
  if (s == "lp") return AdjacencyType::lp;
  if (s == "db+") return AdjacencyType::db_plus;
  if (s == "db-") return AdjacencyType::db_minus;
  return std::nullopt;
}

using AdjacencyPair = std::pair<AdjacencyType, AdjacencyType>;

/// The twelve ways two distinct edges a, b can sit relative to each other.
enum class AdjacencyClass {
  not_adjacent,
  in_out,
  in_in,
  out_out,
  out_in,
  in_lp,
  out_lp,
  lp_out,
  lp_in,
  lp_lp,
  parallel_same,
  parallel_opposite,
};

/// Shared-vertex pattern of an ordered pair of edges (a, b).
struct AdjacencyDescriptor {
  bool initial_initial = false;    // iota(a) == iota(b)
  bool initial_terminal = false;   // iota(a) == tau(b)
  bool terminal_initial = false;   // tau(a) == iota(b)
  bool terminal_terminal = false;  // tau(a) == tau(b)
  bool a_loop = false;
  bool b_loop = false;

  bool adjacent() const {
    return initial_initial || initial_terminal || terminal_initial || terminal_terminal;
  }

  AdjacencyClass classify() const {
    if (!adjacent()) return AdjacencyClass::not_adjacent;
    if (a_loop && b_loop) return AdjacencyClass::lp_lp;
    if (a_loop) return terminal_initial ? AdjacencyClass::lp_out : AdjacencyClass::lp_in;
    if (b_loop) return terminal_initial ? AdjacencyClass::in_lp : AdjacencyClass::out_lp;
    if (initial_initial && terminal_terminal) return AdjacencyClass::parallel_same;
    if (initial_terminal && terminal_initial) return AdjacencyClass::parallel_opposite;
    if (terminal_initial) return AdjacencyClass::in_out;
    if (terminal_terminal) return AdjacencyClass::in_in;
    if (initial_initial) return AdjacencyClass::out_out;
    return AdjacencyClass::out_in;
  }

  /// The (alpha, beta) adjacency symbols, nullopt when not adjacent. Antiparallel pairs
  /// are (db+, db-) in either order.
  std::optional<AdjacencyPair> types() const {
    using T = AdjacencyType;
    switch (classify()) {
      case AdjacencyClass::not_adjacent: return std::nullopt;
      case AdjacencyClass::in_out: return AdjacencyPair{T::in, T::out};
      case AdjacencyClass::in_in: return AdjacencyPair{T::in, T::in};
      case AdjacencyClass::out_out: return AdjacencyPair{T::out, T::out};
      case AdjacencyClass::out_in: return AdjacencyPair{T::out, T::in};
      case AdjacencyClass::in_lp: return AdjacencyPair{T::in, T::lp};
      case AdjacencyClass::out_lp: return AdjacencyPair{T::out, T::lp};
      case AdjacencyClass::lp_out: return AdjacencyPair{T::lp, T::out};
      case AdjacencyClass::lp_in: return AdjacencyPair{T::lp, T::in};
      case AdjacencyClass::lp_lp: return AdjacencyPair{T::lp, T::lp};
      case AdjacencyClass::parallel_same: return AdjacencyPair{T::db_plus, T::db_plus};
      case AdjacencyClass::parallel_opposite: return AdjacencyPair{T::db_plus, T::db_minus};
    }
    return std::nullopt;
  }

  AdjacencyDescriptor swapped() const {
    return {initial_initial, terminal_initial, initial_terminal, terminal_terminal, b_loop, a_loop};
  }

  std::string to_string() const {
    auto t = types();
    if (!t) return "none";
    return "(" + std::string(gluing::to_string(t->first)) + "," + std::string(gluing::to_string(t->second)) + ")";
  }

  friend bool operator==(const AdjacencyDescriptor&, const AdjacencyDescriptor&) = default;
  friend auto operator<=>(const AdjacencyDescriptor&, const AdjacencyDescriptor&) = default;
};

template <typename Vertex>
AdjacencyDescriptor describe_adjacency(const Vertex& iota_a, const Vertex& tau_a, const Vertex& iota_b,
                                       const Vertex& tau_b) {
  return {iota_a == iota_b, iota_a == tau_b, tau_a == iota_b, tau_a == tau_b, iota_a == tau_a, iota_b == tau_b};
}

/// Adjacency of two distinct edges inside the single graph of `slot`, using its own
/// incidence maps.
inline AdjacencyDescriptor classify_local(const IndexedSystem& sys, Slot slot, SymbolId a, SymbolId b) {
  if (a == b) throw InputError("classify_local needs two distinct edges");
  const auto& ea = sys.symbol(a);
  const auto& eb = sys.symbol(b);
  if (ea.owner != slot || eb.owner != slot)
    throw InputError("edges " + ea.name + ", " + eb.name + " are not both in graph " + sys.slot_name(slot));
  return describe_adjacency(ea.from, ea.to, eb.from, eb.to);
}

inline AdjacencyDescriptor classify_local(const IndexedSystem& sys, std::string_view graph, std::string_view a,
                                          std::string_view b) {
  Slot slot = kBaseSlot;
  if (graph != "0") {
    auto c = sys.find_color(graph);
    if (!c) throw InputError("unknown color '" + std::string(graph) + "'");
    slot = slot_of(*c);
  }
  return classify_local(sys, slot, sys.symbol_id(a), sys.symbol_id(b));
}

}  // namespace gluing
