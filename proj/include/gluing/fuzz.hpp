#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "gluing/automaton.hpp"
#include "gluing/oracle.hpp"
#include "gluing/sampling.hpp"

namespace gluing {

struct FuzzOptions {
  std::size_t samples = 1000;
  std::size_t max_preperiod = 10;
  std::size_t max_period = 6;
  std::uint64_t seed = 42;
  unsigned jobs = 1;
};

enum class PairKind { shared_prefix, independent, partner, mutated_partner };

inline std::string_view to_string(PairKind k) {
  switch (k) {
    case PairKind::shared_prefix: return "shared-prefix";
    case PairKind::independent: return "independent";
    case PairKind::partner: return "partner";
    case PairKind::mutated_partner: return "mutated-partner";
  }
  return "?";
}

struct FuzzCase {
  std::size_t index = 0;
  PairKind kind = PairKind::independent;
  IdWord x;
  IdWord y;
};

struct FuzzOutcome {
  FuzzCase input;
  bool automaton = false;
  bool oracle = false;
};

struct FuzzReport {
  std::size_t samples = 0;
  std::size_t disagreements = 0;
  std::size_t glued = 0;
  std::size_t per_kind[4] = {0, 0, 0, 0};
  std::optional<FuzzOutcome> counterexample;  // lowest-index disagreement
};

namespace fuzz_detail {

inline bool within(const IdWord& w, const FuzzOptions& opt) {
  return w.preperiod.size() <= opt.max_preperiod && w.period.size() <= opt.max_period;
}

}  // namespace fuzz_detail

/// Pair number `index` of a fuzz run. Half the pairs share a long random prefix, a quarter
/// are independent, and a quarter pair a word with an automaton-generated partner (half of
/// those then mutated in one symbol).
inline FuzzCase sample_pair(const WordSampler& sampler, const GluingAutomaton& aut, const FuzzOptions& opt,
                            std::size_t index) {
  Rng rng = trial_rng(opt.seed, index);
  FuzzCase c;
  c.index = index;
  auto word = [&](std::span<const SymbolId> prefix = {}) {
    auto w = sampler.sample(rng, prefix);
    if (!w) throw InputError("symbol space has no word within the sampling bounds");
    return *w;
  };
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  if (u < 0.5) {
    c.kind = PairKind::shared_prefix;
    const IdWord seed_word = word();
    const std::size_t lo = std::max<std::size_t>(1, opt.max_preperiod / 2);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(lo, std::max(lo, opt.max_preperiod))(rng);
    const auto prefix = seed_word.prefix(k);
    auto x = sampler.sample(rng, prefix);
    auto y = sampler.sample(rng, prefix);
    if (x && y) {
      c.x = *x;
      c.y = *y;
      return c;
    }
  } else if (u < 0.75) {
    c.kind = PairKind::independent;
  } else {
    for (int attempt = 0; attempt < 16; ++attempt) {
      IdWord y = word();
      auto x = sample_partner(aut, y, rng);
      if (!x || !fuzz_detail::within(*x, opt)) continue;
      c.kind = PairKind::partner;
      if (coin(rng, 0.5)) {
        *x = sampler.mutate(rng, *x);
        c.kind = PairKind::mutated_partner;
      }
      c.x = std::move(*x);
      c.y = std::move(y);
      return c;
    }
  }
  c.kind = PairKind::independent;
  c.x = word();
  c.y = word();
  return c;
}

/// Compares the automaton with the oracle on `opt.samples` pairs.
inline FuzzReport fuzz(const IndexedSystem& sys, const FuzzOptions& opt) {
  const GluingAutomaton aut = trim(build_automaton(sys));
  const WordSampler sampler(sys, opt.max_preperiod, opt.max_period);
  const unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(std::max<std::size_t>(opt.samples, 1))));

  std::vector<FuzzReport> partial(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  auto work = [&](unsigned t) {
    auto& r = partial[t];
    try {
    for (std::size_t i = t; i < opt.samples; i += jobs) {
      FuzzCase c = sample_pair(sampler, aut, opt, i);
      const bool a = glued(aut, c.x, c.y).glued;
      const bool o = oracle_glued(sys, c.x, c.y).glued;
      ++r.samples;
      ++r.per_kind[static_cast<int>(c.kind)];
      if (o) ++r.glued;
      if (a != o) {
        ++r.disagreements;
        if (!r.counterexample || r.counterexample->input.index > i) r.counterexample = FuzzOutcome{c, a, o};
      }
    }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(work, t);
    for (auto& th : threads) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  FuzzReport report;
  for (auto& r : partial) {
    report.samples += r.samples;
    report.disagreements += r.disagreements;
    report.glued += r.glued;
    for (int k = 0; k < 4; ++k) report.per_kind[k] += r.per_kind[k];
    if (r.counterexample && (!report.counterexample || report.counterexample->input.index > r.counterexample->input.index))
      report.counterexample = r.counterexample;
  }
  return report;
}

inline nlohmann::json fuzz_report_to_json(const IndexedSystem& sys, const FuzzOptions& opt, const FuzzReport& r) {
  nlohmann::json j;
  j["samples"] = r.samples;
  j["seed"] = opt.seed;
  j["max_preperiod"] = opt.max_preperiod;
  j["max_period"] = opt.max_period;
  j["disagreements"] = r.disagreements;
  j["glued"] = r.glued;
  nlohmann::json kinds;
  for (int k = 0; k < 4; ++k) kinds[std::string(to_string(static_cast<PairKind>(k)))] = r.per_kind[k];
  j["pair_kinds"] = kinds;
  if (r.counterexample) {
    const auto& c = *r.counterexample;
    j["counterexample"] = {{"index", c.input.index},
                           {"kind", std::string(to_string(c.input.kind))},
                           {"x", print_upword(to_names(sys, c.input.x))},
                           {"y", print_upword(to_names(sys, c.input.y))},
                           {"automaton", c.automaton},
                           {"oracle", c.oracle}};
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

}  // namespace gluing
