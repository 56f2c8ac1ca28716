#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gluing/automaton.hpp"
#include "gluing/color_graph.hpp"
#include "gluing/replacement_system.hpp"
#include "gluing/upword.hpp"

namespace gluing {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent stream for trial `index` of a run seeded with `seed`.
inline Rng trial_rng(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[std::uniform_int_distribution<std::size_t>(0, items.size() - 1)(rng)];
}

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

/// Samples ultimately periodic walks on the color graph, so every word it returns lies in
/// the symbol space with preperiod and period within the requested bounds.
class WordSampler {
 public:
  WordSampler(const IndexedSystem& sys, std::size_t max_preperiod, std::size_t max_period)
      : sys_(&sys), max_pre_(max_preperiod), max_per_(max_period) {
    const std::size_t n = sys.slot_count();
    out_.resize(n);
    for (SymbolId s = 0; s < sys.symbol_count(); ++s) out_[sys.symbol(s).owner].push_back(s);

    // back_[t][k][v]: some walk of exactly k arrows leads from v to t.
    back_.assign(n, std::vector<std::vector<bool>>(max_per_ + 1, std::vector<bool>(n, false)));
    for (Slot t = 0; t < n; ++t) {
      back_[t][0][t] = true;
      for (std::size_t k = 1; k <= max_per_; ++k)
        for (Slot v = 0; v < n; ++v)
          for (auto a : out_[v]) back_[t][k][v] = back_[t][k][v] || back_[t][k - 1][sys.symbol(a).target()];
    }
    cyclic_.assign(n, false);
    for (Slot v = 0; v < n; ++v)
      for (std::size_t k = 1; k <= max_per_; ++k) cyclic_[v] = cyclic_[v] || back_[v][k][v];
    // to_cyclic_[k][v]: some walk of exactly k arrows leads from v to a state with a short cycle.
    const std::size_t horizon = max_pre_ + 1;
    to_cyclic_.assign(horizon + 1, std::vector<bool>(n, false));
    to_cyclic_[0] = cyclic_;
    for (std::size_t k = 1; k <= horizon; ++k)
      for (Slot v = 0; v < n; ++v)
        for (auto a : out_[v]) to_cyclic_[k][v] = to_cyclic_[k][v] || to_cyclic_[k - 1][sys.symbol(a).target()];
  }

  std::size_t max_preperiod() const { return max_pre_; }
  std::size_t max_period() const { return max_per_; }

  /// A random word starting with `prefix`; nullopt when no word within the bounds has it.
  std::optional<IdWord> sample(Rng& rng, std::span<const SymbolId> prefix = {}) const {
    Slot at = kBaseSlot;
    for (auto s : prefix) {
      if (sys_->symbol(s).owner != at) return std::nullopt;
      at = sys_->symbol(s).target();
    }
    const std::size_t start = prefix.size();
    std::vector<std::size_t> lengths;
    for (std::size_t len = std::max<std::size_t>(start, 1); len <= std::max(max_pre_, start); ++len)
      if (len - start < to_cyclic_.size() && to_cyclic_[len - start][at]) lengths.push_back(len);
    if (lengths.empty()) return std::nullopt;

    IdWord w;
    w.preperiod.assign(prefix.begin(), prefix.end());
    const std::size_t len = pick(rng, lengths);
    for (std::size_t r = len - start; r > 0; --r) {
      std::vector<SymbolId> options;
      for (auto a : out_[at])
        if (to_cyclic_[r - 1][sys_->symbol(a).target()]) options.push_back(a);
      const auto a = pick(rng, options);
      w.preperiod.push_back(a);
      at = sys_->symbol(a).target();
    }

    const Slot anchor = at;
    std::vector<std::size_t> periods;
    for (std::size_t p = 1; p <= max_per_; ++p)
      if (back_[anchor][p][anchor]) periods.push_back(p);
    const std::size_t period = pick(rng, periods);
    for (std::size_t r = period; r > 0; --r) {
      std::vector<SymbolId> options;
      for (auto a : out_[at])
        if (back_[anchor][r - 1][sys_->symbol(a).target()]) options.push_back(a);
      const auto a = pick(rng, options);
      w.period.push_back(a);
      at = sys_->symbol(a).target();
    }
    return canonical(std::move(w));
  }

  /// Replaces one symbol by another edge of the same graph and color; the result stays in
  /// the symbol space. Returns the input when no such replacement exists.
  IdWord mutate(Rng& rng, IdWord w) const {
    std::vector<std::pair<std::size_t, SymbolId>> moves;
    const std::size_t total = w.preperiod.size() + w.period.size();
    for (std::size_t k = 0; k < total; ++k) {
      const SymbolId cur = k < w.preperiod.size() ? w.preperiod[k] : w.period[k - w.preperiod.size()];
      const auto& info = sys_->symbol(cur);
      for (auto a : out_[info.owner])
        if (a != cur && sys_->symbol(a).color == info.color) moves.emplace_back(k, a);
    }
    if (moves.empty()) return w;
    auto [k, a] = pick(rng, moves);
    if (k < w.preperiod.size()) {
      w.preperiod[k] = a;
    } else {
      w.period[k - w.preperiod.size()] = a;
    }
    return canonical(std::move(w));
  }

 private:
  const IndexedSystem* sys_;
  std::size_t max_pre_;
  std::size_t max_per_;
  std::vector<std::vector<SymbolId>> out_;
  std::vector<std::vector<std::vector<bool>>> back_;
  std::vector<bool> cyclic_;
  std::vector<std::vector<bool>> to_cyclic_;
};

/// A word x such that the automaton has a run on (x, y), found by a random walk on pairs
/// (state, position in y) until a pair repeats. nullopt if every attempt gets stuck.
inline std::optional<IdWord> sample_partner(const GluingAutomaton& aut, const IdWord& y, Rng& rng,
                                            int attempts = 8) {
  const std::size_t pre = y.preperiod.size();
  const std::size_t len = pre + y.period.size();
  auto next_pos = [&](std::size_t pos) { return pos + 1 < len ? pos + 1 : pre; };
  for (int attempt = 0; attempt < attempts; ++attempt) {
    std::map<std::pair<StateIndex, std::size_t>, std::size_t> seen;
    std::vector<SymbolId> xs;
    StateIndex q = aut.initial();
    std::size_t pos = 0;
    while (true) {
      auto [it, inserted] = seen.try_emplace({q, pos}, xs.size());
      if (!inserted) {
        IdWord x;
        x.preperiod.assign(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(it->second));
        x.period.assign(xs.begin() + static_cast<std::ptrdiff_t>(it->second), xs.end());
        return canonical(std::move(x));
      }
      const SymbolId b = y.at(pos);
      std::vector<std::pair<SymbolId, StateIndex>> options;
      for (const auto& [letter, to] : aut.transitions_from(q))
        if (letter.b == b) options.emplace_back(letter.a, to);
      if (options.empty()) break;
      auto [a, to] = pick(rng, options);
      xs.push_back(a);
      q = to;
      pos = next_pos(pos);
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Random systems

struct RandomSystemOptions {
  std::size_t max_colors = 4;
  std::size_t max_vertices = 6;
  std::size_t max_edges = 8;
  /// Declare every color non-loop and sprinkle loops anyway, producing systems that need
  /// normalization.
  bool mixed_loops = false;
};

/// Random expanding system, rejection-sampled. Normalized unless `mixed_loops` is set.
inline ReplacementSystem random_system(Rng& rng, const RandomSystemOptions& opt = {}) {
  auto uniform = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  for (;;) {
    ReplacementSystem rs;
    const std::size_t k = uniform(1, opt.max_colors);
    for (std::size_t c = 0; c < k; ++c) {
      ColorSpec spec{std::to_string(c + 1), ColorKind::nonloop, "v0", "v1", ""};
      if (!opt.mixed_loops && coin(rng, 0.3)) spec = {std::to_string(c + 1), ColorKind::loop, "", "", "v0"};
      rs.colors.push_back(spec);
    }
    std::vector<ColorSpec> loop_colors;
    for (const auto& c : rs.colors)
      if (c.kind == ColorKind::loop) loop_colors.push_back(c);
    std::size_t next_edge = 0;
    bool dead_end = false;
    auto make_graph = [&](std::size_t vertices, std::size_t edges, const ColorSpec* owner) {
      ColoredGraph g;
      for (std::size_t v = 0; v < vertices; ++v) g.vertices.push_back("v" + std::to_string(v));
      for (std::size_t e = 0; e < edges; ++e) {
        ColorSpec color = pick(rng, rs.colors);
        bool loop = opt.mixed_loops ? coin(rng, 0.25) : color.kind == ColorKind::loop;
        if (vertices == 1 && !loop) {
          // A single vertex only carries loops.
          if (opt.mixed_loops) {
            loop = true;
          } else if (!loop_colors.empty()) {
            color = pick(rng, loop_colors);
            loop = true;
          } else {
            dead_end = true;
            return g;
          }
        }
        std::string from = pick(rng, g.vertices);
        std::string to = from;
        if (!loop) {
          while (to == from) to = pick(rng, g.vertices);
          if (owner && owner->kind == ColorKind::nonloop &&
              ((from == owner->iota && to == owner->tau) || (from == owner->tau && to == owner->iota)))
            to = "v2";
        }
        g.edges.push_back({"e" + std::to_string(next_edge++), from, to, color.id});
      }
      return g;
    };
    rs.base = make_graph(uniform(1, 4), uniform(1, 4), nullptr);
    for (const auto& c : rs.colors) {
      const std::size_t lo = c.kind == ColorKind::loop ? 2 : 3;
      rs.replacements[c.id] = make_graph(uniform(lo, opt.max_vertices), uniform(2, opt.max_edges), &c);
    }
    if (dead_end || !validate_system(rs).empty() || !check_expanding(rs).expanding()) continue;
    if (!opt.mixed_loops && !check_loop_assumption(rs).empty()) continue;
    return rs;
  }
}

}  // namespace gluing
