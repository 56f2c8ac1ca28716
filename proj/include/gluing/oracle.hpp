#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "gluing/adjacency.hpp"
#include "gluing/color_graph.hpp"
#include "gluing/error.hpp"
#include "gluing/replacement_system.hpp"
#include "gluing/upword.hpp"

namespace gluing {

struct OracleStep {
  std::size_t index = 0;  // length of the prefixes minus one
  AdjacencyDescriptor descriptor;
};

/// Decision of the brute-force gluing check. The certificate lists the adjacency of the
/// prefixes from the divergence index on, up to rejection or to the detected cycle.
struct OracleVerdict {
  bool glued = false;
  bool equal_sequences = false;
  std::optional<std::size_t> divergence;
  std::vector<OracleStep> certificate;
  std::optional<std::size_t> cycle_start;  // index where the repeated (descriptor, phase) first occurred
};

/// Decides x ~ y straight from the definition: after the divergence index m, follow the two
/// addressed edges through the expansions, tracking their endpoints, and reject as soon as
/// they share no vertex. Once (descriptor, phase) repeats, the rest of the run repeats too.
inline OracleVerdict oracle_glued(const IndexedSystem& sys, const IdWord& x, const IdWord& y) {
  sys.require_normalized_expanding();
  if (!in_symbol_space(sys, x) || !in_symbol_space(sys, y))
    throw InputError("oracle inputs must be sequences of the symbol space");

  OracleVerdict verdict;
  const auto m = divergence_index(x, y);
  if (!m) {
    verdict.glued = true;
    verdict.equal_sequences = true;
    return verdict;
  }
  verdict.divergence = m;

  struct Ends {
    std::uint64_t from;
    std::uint64_t to;
  };
  std::uint64_t fresh = sys.slot(kBaseSlot).vertex_names.size();
  auto expand = [&](const Ends& parent, SymbolId s, std::uint64_t copy) {
    const auto& info = sys.symbol(s);
    const auto& rg = sys.slot(info.owner);
    auto map = [&](LocalVertex v) -> std::uint64_t {
      if (rg.lambda && v == *rg.lambda) return parent.from;
      if (rg.iota && v == *rg.iota) return parent.from;
      if (rg.tau && v == *rg.tau) return parent.to;
      return copy + v;
    };
    return Ends{map(info.from), map(info.to)};
  };

  Ends ex{sys.symbol(x.at(0)).from, sys.symbol(x.at(0)).to};
  Ends ey{sys.symbol(y.at(0)).from, sys.symbol(y.at(0)).to};
  const auto schedule = PairSchedule::of(x, y);
  // Descriptors come in at most 12 kinds; anything beyond this bound is a logic error.
  const std::size_t bound = *m + schedule.preperiod + 13 * schedule.period + 1;
  std::map<std::pair<AdjacencyDescriptor, std::size_t>, std::size_t> seen;

  for (std::size_t n = 0;; ++n) {
    if (n > 0) {
      const auto width_x = sys.slot(sys.symbol(x.at(n)).owner).vertex_names.size();
      const std::uint64_t copy_x = fresh;
      fresh += width_x;
      std::uint64_t copy_y = copy_x;
      if (n > *m) {
        copy_y = fresh;
        fresh += sys.slot(sys.symbol(y.at(n)).owner).vertex_names.size();
      }
      ex = expand(ex, x.at(n), copy_x);
      ey = expand(ey, y.at(n), copy_y);
    }
    if (n < *m) continue;

    const auto d = describe_adjacency(ex.from, ex.to, ey.from, ey.to);
    verdict.certificate.push_back({n, d});
    if (!d.adjacent()) return verdict;
    if (schedule.periodic_at(n)) {
      auto [it, inserted] = seen.try_emplace({d, schedule.phase(n)}, n);
      if (!inserted) {
        verdict.glued = true;
        verdict.cycle_start = it->second;
        return verdict;
      }
    }
    if (n > bound) throw BuildError("oracle exceeded its termination bound");
  }
}

inline OracleVerdict oracle_glued(const IndexedSystem& sys, const UPWord& x, const UPWord& y) {
  return oracle_glued(sys, to_ids(sys, x), to_ids(sys, y));
}

}  // namespace gluing
