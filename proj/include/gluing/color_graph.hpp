#pragma once

#include <deque>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "gluing/error.hpp"
#include "gluing/replacement_system.hpp"
#include "gluing/upword.hpp"

namespace gluing {

using IdWord = BasicUPWord<SymbolId>;

struct ColorArrow {
  Slot from = 0;
  Slot to = 0;
  std::string label;

  friend bool operator==(const ColorArrow&, const ColorArrow&) = default;
};

/// The color graph: a state per slot (q(0) for the base graph, q(c) per color) and one
/// arrow q(owner) -> q(color) per edge symbol. Finite walks from q(0) are the edge words,
/// infinite ones form the symbol space.
class ColorGraph {
 public:
  explicit ColorGraph(const IndexedSystem& sys) {
    for (Slot s = 0; s < sys.slot_count(); ++s) states_.push_back("q(" + sys.slot_name(s) + ")");
    out_.resize(sys.slot_count());
    for (SymbolId id = 0; id < sys.symbol_count(); ++id) {
      const auto& info = sys.symbol(id);
      by_label_[info.name] = arrows_.size();
      out_[info.owner].push_back(arrows_.size());
      arrows_.push_back({info.owner, info.target(), info.name});
    }
  }

  std::size_t state_count() const { return states_.size(); }
  const std::string& state_name(Slot s) const { return states_[s]; }
  const std::vector<ColorArrow>& arrows() const { return arrows_; }
  std::size_t out_degree(Slot s) const { return out_[s].size(); }

  const ColorArrow* arrow(std::string_view label) const {
    auto it = by_label_.find(std::string(label));
    return it == by_label_.end() ? nullptr : &arrows_[it->second];
  }

  /// Slot reached by walking `word` from q(0), or nullopt if it is not a walk.
  std::optional<Slot> walk(std::span<const std::string> word) const {
    Slot at = kBaseSlot;
    for (const auto& s : word) {
      const auto* a = arrow(s);
      if (!a || a->from != at) return std::nullopt;
      at = a->to;
    }
    return at;
  }

  /// Labels of arrows whose source is reachable from q(0).
  std::set<std::string> reachable_arrows() const {
    std::vector<bool> seen(states_.size(), false);
    std::deque<Slot> queue{kBaseSlot};
    seen[kBaseSlot] = true;
    std::set<std::string> labels;
    while (!queue.empty()) {
      Slot s = queue.front();
      queue.pop_front();
      for (auto idx : out_[s]) {
        const auto& a = arrows_[idx];
        labels.insert(a.label);
        if (!seen[a.to]) {
          seen[a.to] = true;
          queue.push_back(a.to);
        }
      }
    }
    return labels;
  }

 private:
  std::vector<std::string> states_;
  std::vector<ColorArrow> arrows_;
  std::vector<std::vector<std::size_t>> out_;
  std::unordered_map<std::string, std::size_t> by_label_;
};

inline ColorGraph build_color_graph(const ReplacementSystem& rs) { return ColorGraph(IndexedSystem(rs)); }

inline bool is_edge_word(const ColorGraph& cg, std::span<const std::string> word) {
  return cg.walk(word).has_value();
}

inline bool is_symbol_sequence(const ColorGraph& cg, const UPWord& w) {
  if (w.period.empty()) return false;
  std::vector<std::string> finite = w.preperiod;
  finite.insert(finite.end(), w.period.begin(), w.period.end());
  auto end = cg.walk(finite);
  if (!end) return false;
  const auto* first = cg.arrow(w.period.front());
  return first->from == *end;
}

// Integer-symbol versions used by the decision procedures.

inline bool is_edge_word(const IndexedSystem& sys, std::span<const SymbolId> word) {
  Slot at = kBaseSlot;
  for (auto s : word) {
    if (s >= sys.symbol_count() || sys.symbol(s).owner != at) return false;
    at = sys.symbol(s).target();
  }
  return true;
}

inline bool in_symbol_space(const IndexedSystem& sys, const IdWord& w) {
  if (w.period.empty()) return false;
  std::vector<SymbolId> finite = w.preperiod;
  finite.insert(finite.end(), w.period.begin(), w.period.end());
  if (!is_edge_word(sys, finite)) return false;
  return sys.symbol(w.period.front()).owner == sys.symbol(w.period.back()).target();
}

inline IdWord to_ids(const IndexedSystem& sys, const UPWord& w) {
  IdWord out;
  for (const auto& s : w.preperiod) out.preperiod.push_back(sys.symbol_id(s));
  for (const auto& s : w.period) out.period.push_back(sys.symbol_id(s));
  return out;
}

inline UPWord to_names(const IndexedSystem& sys, const IdWord& w) {
  UPWord out;
  for (auto s : w.preperiod) out.preperiod.push_back(sys.symbol(s).name);
  for (auto s : w.period) out.period.push_back(sys.symbol(s).name);
  return out;
}

inline std::vector<SymbolId> to_ids(const IndexedSystem& sys, std::span<const std::string> word) {
  std::vector<SymbolId> out;
  for (const auto& s : word) out.push_back(sys.symbol_id(s));
  return out;
}

}  // namespace gluing
