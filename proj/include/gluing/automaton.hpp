#pragma once

#include <compare>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gluing/adjacency.hpp"
#include "gluing/color_graph.hpp"
#include "gluing/error.hpp"
#include "gluing/replacement_system.hpp"
#include "gluing/upword.hpp"

namespace gluing {

// ---------------------------------------------------------------------------
// States and letters

enum class StateKind : std::uint8_t { q0, q1 };

/// q0(slot) while both inputs still read the same edge; q1(i gamma; j delta) once they have
/// diverged, with i, j the colors of the current edges and gamma, delta their adjacency.
struct GluingState {
  StateKind kind = StateKind::q0;
  Slot slot = kBaseSlot;
  ColorIndex i = 0;
  AdjacencyType gamma = AdjacencyType::in;
  ColorIndex j = 0;
  AdjacencyType delta = AdjacencyType::in;

  static GluingState q0(Slot s) { return {StateKind::q0, s, 0, AdjacencyType::in, 0, AdjacencyType::in}; }
  static GluingState q1(ColorIndex i, AdjacencyType gamma, ColorIndex j, AdjacencyType delta) {
    return {StateKind::q1, kBaseSlot, i, gamma, j, delta};
  }

  bool is_q0() const { return kind == StateKind::q0; }

  /// gamma != db-, and delta is db+/db- exactly when gamma is db+.
  bool valid() const {
    if (is_q0()) return true;
    const bool delta_db = delta == AdjacencyType::db_plus || delta == AdjacencyType::db_minus;
    return gamma != AdjacencyType::db_minus && (delta_db == (gamma == AdjacencyType::db_plus));
  }

  friend bool operator==(const GluingState&, const GluingState&) = default;
  friend auto operator<=>(const GluingState&, const GluingState&) = default;
};

/// "q0(0)", "q0(1)", "q1(1 in; 2 lp)".
inline std::string state_label(const GluingState& s, std::span<const std::string> colors) {
  if (s.is_q0()) return "q0(" + (s.slot == kBaseSlot ? std::string("0") : colors[s.slot - 1]) + ")";
  return "q1(" + colors[s.i] + " " + std::string(to_string(s.gamma)) + "; " + colors[s.j] + " " +
         std::string(to_string(s.delta)) + ")";
}

inline std::optional<GluingState> parse_state_label(std::string_view text, std::span<const std::string> colors) {
  auto color_index = [&](std::string_view id) -> std::optional<ColorIndex> {
    for (ColorIndex c = 0; c < colors.size(); ++c)
      if (colors[c] == id) return c;
    return std::nullopt;
  };
  auto inside = [&](std::string_view prefix) -> std::optional<std::string_view> {
    if (text.size() < prefix.size() + 1 || text.substr(0, prefix.size()) != prefix || text.back() != ')')
      return std::nullopt;
    return text.substr(prefix.size(), text.size() - prefix.size() - 1);
  };
  if (auto body = inside("q0(")) {
    if (*body == "0") return GluingState::q0(kBaseSlot);
    auto c = color_index(*body);
    if (!c) return std::nullopt;
    return GluingState::q0(slot_of(*c));
  }
  auto body = inside("q1(");
  if (!body) return std::nullopt;
  auto semi = body->find("; ");
  if (semi == std::string_view::npos) return std::nullopt;
  auto side = [&](std::string_view part) -> std::optional<std::pair<ColorIndex, AdjacencyType>> {
    auto space = part.rfind(' ');
    if (space == std::string_view::npos) return std::nullopt;
    auto c = color_index(part.substr(0, space));
    auto t = adjacency_type_from_string(part.substr(space + 1));
    if (!c || !t) return std::nullopt;
    return std::pair{*c, *t};
  };
  auto a = side(body->substr(0, semi));
  auto b = side(body->substr(semi + 2));
  if (!a || !b) return std::nullopt;
  GluingState s = GluingState::q1(a->first, a->second, b->first, b->second);
  if (!s.valid()) return std::nullopt;
  return s;
}

struct Letter {
  SymbolId a = 0;
  SymbolId b = 0;

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

// ---------------------------------------------------------------------------
// Type 2 semantics: what a q1 state says about the boundary vertices of the two
// replacement graphs about to be attached, and what the new pair of edges looks like.

enum class BoundaryRole : std::uint8_t { iota, tau, lambda };
enum class Incidence : std::uint8_t { leaves, enters, loops };

/// An edge of a replacement graph meeting one of its boundary vertices.
struct Touch {
  BoundaryRole role;
  Incidence how;

  friend bool operator==(const Touch&, const Touch&) = default;
};

inline AdjacencyType adjacency_of(Incidence how) {
  switch (how) {
    case Incidence::leaves: return AdjacencyType::out;
    case Incidence::enters: return AdjacencyType::in;
    case Incidence::loops: return AdjacencyType::lp;
  }
  return AdjacencyType::lp;
}

/// Pairs (vertex of Gamma_i, vertex of Gamma_j) that are the same vertex once both
/// replacement graphs are attached, for the state q1(i gamma; j delta).
inline std::vector<std::pair<BoundaryRole, BoundaryRole>> identified_boundaries(AdjacencyType gamma,
                                                                                AdjacencyType delta) {
  using T = AdjacencyType;
  auto single = [](T t) -> std::optional<BoundaryRole> {
    switch (t) {
      case T::in: return BoundaryRole::tau;
      case T::out: return BoundaryRole::iota;
      case T::lp: return BoundaryRole::lambda;
      default: return std::nullopt;
    }
  };
  if (gamma == T::db_plus && delta == T::db_plus)
    return {{BoundaryRole::tau, BoundaryRole::tau}, {BoundaryRole::iota, BoundaryRole::iota}};
  if (gamma == T::db_plus && delta == T::db_minus)
    return {{BoundaryRole::tau, BoundaryRole::iota}, {BoundaryRole::iota, BoundaryRole::tau}};
  auto ri = single(gamma);
  auto rj = single(delta);
  if (!ri || !rj) return {};
  return {{*ri, *rj}};
}

/// One cell of the Type 2 table: the target adjacency pair when edge a (in Gamma_i) touches
/// its boundary as `a` and edge b (in Gamma_j) touches its boundary as `b`.
inline std::optional<AdjacencyPair> type2_entry(AdjacencyType gamma, Touch a, AdjacencyType delta, Touch b) {
  for (auto [ri, rj] : identified_boundaries(gamma, delta))
    if (a.role == ri && b.role == rj) return AdjacencyPair{adjacency_of(a.how), adjacency_of(b.how)};
  return std::nullopt;
}

/// Boundary vertices of its own replacement graph that `edge` is incident on.
inline std::vector<Touch> boundary_touches(const IndexedSystem& sys, SymbolId edge) {
  const auto& info = sys.symbol(edge);
  const auto& rg = sys.slot(info.owner);
  std::vector<Touch> out;
  auto check = [&](std::optional<LocalVertex> v, BoundaryRole role) {
    if (!v) return;
    const bool from = info.from == *v;
    const bool to = info.to == *v;
    if (from && to) {
      out.push_back({role, Incidence::loops});
    } else if (from) {
      out.push_back({role, Incidence::leaves});
    } else if (to) {
      out.push_back({role, Incidence::enters});
    }
  };
  check(rg.iota, BoundaryRole::iota);
  check(rg.tau, BoundaryRole::tau);
  check(rg.lambda, BoundaryRole::lambda);
  return out;
}

// ---------------------------------------------------------------------------
// The automaton

using StateIndex = std::uint32_t;

enum class TransitionType { type0, type1, type2 };

struct Transition {
  StateIndex from = 0;
  Letter letter;
  StateIndex to = 0;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Deterministic partial automaton over pairs of edge symbols.
class GluingAutomaton {
 public:
  GluingAutomaton(std::vector<std::string> alphabet, std::vector<std::string> colors)
      : alphabet_(std::move(alphabet)), colors_(std::move(colors)) {
    for (SymbolId s = 0; s < alphabet_.size(); ++s) symbol_index_[alphabet_[s]] = s;
  }

  StateIndex add_state(const GluingState& s) {
    if (!s.valid()) throw BuildError("invalid state " + label(s));
    auto [it, inserted] = state_index_.try_emplace(s, static_cast<StateIndex>(states_.size()));
    if (!inserted) throw BuildError("duplicate state " + label(s));
    states_.push_back(s);
    out_.emplace_back();
    if (s == GluingState::q0(kBaseSlot)) initial_ = it->second;
    return it->second;
  }

  void add_transition(StateIndex from, Letter letter, StateIndex to) {
    if (!states_[from].is_q0() && states_[to].is_q0())
      throw BuildError("transition from " + label(states_[from]) + " back to " + label(states_[to]));
    auto [it, inserted] = out_[from].try_emplace(letter, to);
    if (!inserted && it->second != to)
      throw BuildError("nondeterministic transitions from " + label(states_[from]) + " on (" + alphabet_[letter.a] +
                       "," + alphabet_[letter.b] + ")");
  }

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::vector<std::string>& colors() const { return colors_; }
  const std::vector<GluingState>& states() const { return states_; }
  const GluingState& state(StateIndex s) const { return states_[s]; }
  std::size_t state_count() const { return states_.size(); }
  StateIndex initial() const { return initial_; }
  const std::map<Letter, StateIndex>& transitions_from(StateIndex s) const { return out_[s]; }

  std::optional<StateIndex> find_state(const GluingState& s) const {
    auto it = state_index_.find(s);
    if (it == state_index_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<SymbolId> symbol(std::string_view name) const {
    auto it = symbol_index_.find(std::string(name));
    if (it == symbol_index_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<StateIndex> step(StateIndex s, Letter letter) const {
    auto it = out_[s].find(letter);
    if (it == out_[s].end()) return std::nullopt;
    return it->second;
  }

  std::optional<StateIndex> step(StateIndex s, std::string_view a, std::string_view b) const {
    auto sa = symbol(a);
    auto sb = symbol(b);
    if (!sa || !sb) return std::nullopt;
    return step(s, Letter{*sa, *sb});
  }

  std::size_t transition_count() const {
    std::size_t n = 0;
    for (const auto& m : out_) n += m.size();
    return n;
  }

  std::vector<Transition> transitions() const {
    std::vector<Transition> all;
    for (StateIndex s = 0; s < out_.size(); ++s)
      for (const auto& [letter, to] : out_[s]) all.push_back({s, letter, to});
    return all;
  }

  TransitionType type_of(const Transition& t) const {
    if (!states_[t.from].is_q0()) return TransitionType::type2;
    return states_[t.to].is_q0() ? TransitionType::type0 : TransitionType::type1;
  }

  std::string label(const GluingState& s) const { return state_label(s, colors_); }
  std::string label(StateIndex s) const { return label(states_[s]); }
  std::string letter_label(Letter l) const { return "(" + alphabet_[l.a] + "," + alphabet_[l.b] + ")"; }

  friend bool operator==(const GluingAutomaton& x, const GluingAutomaton& y) {
    return x.alphabet_ == y.alphabet_ && x.colors_ == y.colors_ && x.states_ == y.states_ &&
           x.initial_ == y.initial_ && x.out_ == y.out_;
  }

 private:
  std::vector<std::string> alphabet_;
  std::vector<std::string> colors_;
  std::vector<GluingState> states_;
  std::vector<std::map<Letter, StateIndex>> out_;
  std::map<GluingState, StateIndex> state_index_;
  std::map<std::string, SymbolId> symbol_index_;
  StateIndex initial_ = 0;
};

/// Adjacency pairs allowed in q1 states, in the order they are enumerated.
inline const std::vector<AdjacencyPair>& q1_adjacency_pairs() {
  using T = AdjacencyType;
  static const std::vector<AdjacencyPair> pairs = [] {
    std::vector<AdjacencyPair> v;
    for (T g : {T::in, T::out, T::lp})
      for (T d : {T::in, T::out, T::lp}) v.emplace_back(g, d);
    v.emplace_back(T::db_plus, T::db_plus);
    v.emplace_back(T::db_plus, T::db_minus);
    return v;
  }();
  return pairs;
}

/// Builds the full gluing automaton (every q0 state, every valid q1 quadruple) of a
/// loop-normalized expanding system.
inline GluingAutomaton build_automaton(const IndexedSystem& sys) {
  sys.require_normalized_expanding();

  std::vector<std::string> alphabet;
  for (const auto& s : sys.symbols()) alphabet.push_back(s.name);
  std::vector<std::string> colors;
  for (ColorIndex c = 0; c < sys.color_count(); ++c) colors.push_back(sys.color(c).id);
  GluingAutomaton aut(std::move(alphabet), std::move(colors));

  for (Slot s = 0; s < sys.slot_count(); ++s) aut.add_state(GluingState::q0(s));
  for (ColorIndex i = 0; i < sys.color_count(); ++i)
    for (ColorIndex j = 0; j < sys.color_count(); ++j)
      for (auto [g, d] : q1_adjacency_pairs()) aut.add_state(GluingState::q1(i, g, j, d));

  auto q1_target = [&](SymbolId a, SymbolId b, AdjacencyPair t) {
    return *aut.find_state(GluingState::q1(sys.symbol(a).color, t.first, sys.symbol(b).color, t.second));
  };

  // Types 0 and 1.
  for (Slot s = 0; s < sys.slot_count(); ++s) {
    const StateIndex from = *aut.find_state(GluingState::q0(s));
    const auto& edges = sys.slot(s).edges;
    for (auto a : edges) {
      for (auto b : edges) {
        if (a == b) {
          aut.add_transition(from, {a, a}, *aut.find_state(GluingState::q0(sys.symbol(a).target())));
          continue;
        }
        if (auto t = classify_local(sys, s, a, b).types()) aut.add_transition(from, {a, b}, q1_target(a, b, *t));
      }
    }
  }

  // Type 2.
  std::vector<std::vector<Touch>> touches(sys.symbol_count());
  for (SymbolId e = 0; e < sys.symbol_count(); ++e) touches[e] = boundary_touches(sys, e);
  for (StateIndex q = 0; q < aut.state_count(); ++q) {
    const auto st = aut.state(q);
    if (st.is_q0()) continue;
    for (auto a : sys.slot(slot_of(st.i)).edges) {
      for (auto b : sys.slot(slot_of(st.j)).edges) {
        std::optional<AdjacencyPair> target;
        for (const auto& ta : touches[a]) {
          for (const auto& tb : touches[b]) {
            auto entry = type2_entry(st.gamma, ta, st.delta, tb);
            if (!entry) continue;
            if (target && *target != *entry)
              throw BuildError("ambiguous Type 2 transition from " + aut.label(q) + " on " + aut.letter_label({a, b}));
            target = entry;
          }
        }
        if (!target) continue;
        if (target->first == AdjacencyType::db_plus || target->first == AdjacencyType::db_minus ||
            target->second == AdjacencyType::db_plus || target->second == AdjacencyType::db_minus)
          throw BuildError("Type 2 transition into a parallel state");
        aut.add_transition(q, {a, b}, q1_target(a, b, *target));
      }
    }
  }
  return aut;
}

inline GluingAutomaton build_automaton(const ReplacementSystem& rs) { return build_automaton(IndexedSystem(rs)); }

/// Restriction to the states reachable from q0(0), keeping their relative order.
inline GluingAutomaton trim(const GluingAutomaton& aut) {
  std::vector<bool> seen(aut.state_count(), false);
  std::deque<StateIndex> queue{aut.initial()};
  seen[aut.initial()] = true;
  while (!queue.empty()) {
    auto s = queue.front();
    queue.pop_front();
    for (const auto& [letter, to] : aut.transitions_from(s)) {
      if (!seen[to]) {
        seen[to] = true;
        queue.push_back(to);
      }
    }
  }
  GluingAutomaton out(aut.alphabet(), aut.colors());
  std::vector<StateIndex> renumber(aut.state_count());
  for (StateIndex s = 0; s < aut.state_count(); ++s)
    if (seen[s]) renumber[s] = out.add_state(aut.state(s));
  for (StateIndex s = 0; s < aut.state_count(); ++s) {
    if (!seen[s]) continue;
    for (const auto& [letter, to] : aut.transitions_from(s)) out.add_transition(renumber[s], letter, renumber[to]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Runs

enum class RunStatus { exhausted, stuck, cycling };

inline std::string_view to_string(RunStatus s) {
  switch (s) {
    case RunStatus::exhausted: return "exhausted";
    case RunStatus::stuck: return "stuck";
    case RunStatus::cycling: return "cycling";
  }
  return "?";
}

struct RunTrace {
  std::vector<Transition> steps;
  RunStatus status = RunStatus::exhausted;
  StateIndex final_state = 0;
  std::optional<std::size_t> stuck_index;  // index of the letter with no transition
  std::optional<std::size_t> cycle_start;  // first index of the repeated (state, phase)

  bool accepted() const { return status != RunStatus::stuck; }
};

inline RunTrace recognizes_finite(const GluingAutomaton& aut, std::span<const Letter> word) {
  RunTrace trace;
  StateIndex at = aut.initial();
  for (std::size_t n = 0; n < word.size(); ++n) {
    auto next = aut.step(at, word[n]);
    if (!next) {
      trace.status = RunStatus::stuck;
      trace.stuck_index = n;
      trace.final_state = at;
      return trace;
    }
    trace.steps.push_back({at, word[n], *next});
    at = *next;
  }
  trace.final_state = at;
  return trace;
}

inline RunTrace recognizes_finite(const GluingAutomaton& aut,
                                  std::span<const std::pair<std::string, std::string>> word) {
  std::vector<Letter> letters;
  for (std::size_t n = 0; n < word.size(); ++n) {
    auto a = aut.symbol(word[n].first);
    auto b = aut.symbol(word[n].second);
    if (!a || !b) {
      // An unknown symbol has no transition: the run stops there.
      RunTrace trace = recognizes_finite(aut, letters);
      if (trace.status == RunStatus::exhausted) {
        trace.status = RunStatus::stuck;
        trace.stuck_index = n;
      }
      return trace;
    }
    letters.push_back({*a, *b});
  }
  return recognizes_finite(aut, letters);
}

/// Runs the automaton on the infinite pair (x, y): stuck means rejected, cycling means the
/// run repeats a (state, phase) pair and therefore continues forever.
inline RunTrace run_pair(const GluingAutomaton& aut, const IdWord& x, const IdWord& y) {
  const auto schedule = PairSchedule::of(x, y);
  const std::size_t bound = schedule.preperiod + aut.state_count() * schedule.period;
  std::map<std::pair<StateIndex, std::size_t>, std::size_t> seen;
  RunTrace trace;
  StateIndex at = aut.initial();
  for (std::size_t n = 0;; ++n) {
    if (schedule.periodic_at(n)) {
      auto [it, inserted] = seen.try_emplace({at, schedule.phase(n)}, n);
      if (!inserted) {
        trace.status = RunStatus::cycling;
        trace.cycle_start = it->second;
        trace.final_state = at;
        return trace;
      }
    }
    if (n > bound) throw BuildError("run exceeded its termination bound");
    const Letter letter{x.at(n), y.at(n)};
    auto next = aut.step(at, letter);
    if (!next) {
      trace.status = RunStatus::stuck;
      trace.stuck_index = n;
      trace.final_state = at;
      return trace;
    }
    trace.steps.push_back({at, letter, *next});
    at = *next;
  }
}

inline IdWord to_ids(const GluingAutomaton& aut, const UPWord& w) {
  IdWord out;
  auto id = [&](const std::string& s) {
    auto v = aut.symbol(s);
    if (!v) throw InputError("unknown symbol '" + s + "'");
    return *v;
  };
  for (const auto& s : w.preperiod) out.preperiod.push_back(id(s));
  for (const auto& s : w.period) out.period.push_back(id(s));
  return out;
}

/// Membership in the symbol space through the q0 sub-automaton, which is a copy of the
/// color graph.
inline bool in_symbol_space(const GluingAutomaton& aut, const IdWord& w) {
  if (w.period.empty()) return false;
  return run_pair(aut, w, w).accepted();
}

struct GluingDecision {
  bool glued = false;
  RunTrace trace;
};

inline GluingDecision glued(const GluingAutomaton& aut, const IdWord& x, const IdWord& y) {
  if (!in_symbol_space(aut, x) || !in_symbol_space(aut, y))
    throw InputError("inputs must be sequences of the symbol space");
  auto trace = run_pair(aut, x, y);
  return {trace.accepted(), std::move(trace)};
}

inline GluingDecision glued(const GluingAutomaton& aut, const UPWord& x, const UPWord& y) {
  return glued(aut, to_ids(aut, x), to_ids(aut, y));
}

// ---------------------------------------------------------------------------
// Projection onto the color graph

struct ProjectionVerdict {
  bool ok = true;
  std::vector<std::string> problems;
};

/// Maps q0(i) and q1(i ...; ...) to q(i) and a transition on (a, b) to the arrow a, checks
/// that this is a graph morphism whose image is the reachable part of the color graph, and
/// that projecting onto second coordinates (q1(...; j ...) to q(j), arrow b) is a morphism too.
inline ProjectionVerdict project_to_color_graph(const GluingAutomaton& aut, const ColorGraph& cg) {
  ProjectionVerdict verdict;
  auto fail = [&](std::string msg) {
    verdict.ok = false;
    verdict.problems.push_back(std::move(msg));
  };
  if (cg.state_count() != aut.colors().size() + 1) {
    fail("color graph and automaton have different color sets");
    return verdict;
  }
  for (ColorIndex c = 0; c < aut.colors().size(); ++c)
    if (cg.state_name(slot_of(c)) != "q(" + aut.colors()[c] + ")") fail("color order mismatch at " + aut.colors()[c]);
  if (!verdict.ok) return verdict;

  const GluingAutomaton reachable = trim(aut);
  auto first = [](const GluingState& s) { return s.is_q0() ? s.slot : slot_of(s.i); };
  auto second = [](const GluingState& s) { return s.is_q0() ? s.slot : slot_of(s.j); };

  std::set<std::string> image;
  for (const auto& t : reachable.transitions()) {
    const auto& from = reachable.state(t.from);
    const auto& to = reachable.state(t.to);
    const auto& la = reachable.alphabet()[t.letter.a];
    const auto& lb = reachable.alphabet()[t.letter.b];
    const auto* arrow_a = cg.arrow(la);
    if (!arrow_a || arrow_a->from != first(from) || arrow_a->to != first(to)) {
      fail("first projection of " + reachable.label(t.from) + " " + reachable.letter_label(t.letter) +
           " is not an arrow of the color graph");
    } else {
      image.insert(la);
    }
    const auto* arrow_b = cg.arrow(lb);
    if (!arrow_b || arrow_b->from != second(from) || arrow_b->to != second(to))
      fail("second projection of " + reachable.label(t.from) + " " + reachable.letter_label(t.letter) +
           " is not an arrow of the color graph");
  }
  if (image != cg.reachable_arrows()) fail("image of the first projection differs from the reachable color graph");
  return verdict;
}

}  // namespace gluing
