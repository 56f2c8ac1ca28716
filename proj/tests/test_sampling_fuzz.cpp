#include <gtest/gtest.h>

#include "support.hpp"

using namespace gluing;
using namespace gluing::testing;

TEST(TrialRng, StreamsAreReproducibleAndDistinct) {
  Rng a = trial_rng(42, 7);
  Rng b = trial_rng(42, 7);
  Rng c = trial_rng(42, 8);
  Rng d = trial_rng(43, 7);
  const auto va = a();
  EXPECT_EQ(va, b());
  EXPECT_NE(va, c());
  EXPECT_NE(va, d());
}

TEST(WordSampler, WordsAreCanonicalMembersWithinBounds) {
  std::vector<ReplacementSystem> systems = {interval_system(), basilica_system(), dendrite_system(6)};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng = trial_rng(51, seed);
    systems.push_back(random_system(rng));
  }
  for (const auto& rs : systems) {
    const IndexedSystem sys(rs);
    for (const auto& [pre, per] : std::vector<std::pair<std::size_t, std::size_t>>{{10, 6}, {3, 2}, {0, 1}, {1, 1}}) {
      const WordSampler sampler(sys, pre, per);
      Rng rng(pre * 100 + per);
      for (int k = 0; k < 200; ++k) {
        const auto w = sampler.sample(rng);
        if (!w) continue;
        EXPECT_TRUE(in_symbol_space(sys, *w));
        EXPECT_EQ(canonical(*w), *w);
        EXPECT_LE(w->preperiod.size(), pre);
        EXPECT_LE(w->period.size(), per);
      }
    }
  }
}

TEST(WordSampler, CoversAllSmallWords) {
  const IndexedSystem sys(basilica_system());
  const WordSampler sampler(sys, 2, 2);
  const auto expected = all_words(sys, 2, 2);
  std::set<IdWord> seen;
  Rng rng(1);
  for (int k = 0; k < 20000 && seen.size() < expected.size(); ++k) seen.insert(*sampler.sample(rng));
  EXPECT_EQ(seen, std::set<IdWord>(expected.begin(), expected.end()));
}

TEST(WordSampler, HonorsPrefixes) {
  const IndexedSystem sys(basilica_system());
  const WordSampler sampler(sys, 6, 3);
  Rng rng(9);
  const std::vector<SymbolId> prefix = to_ids(sys, std::vector<std::string>{"L", "4", "2", "6"});
  for (int k = 0; k < 200; ++k) {
    const auto w = sampler.sample(rng, prefix);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->prefix(prefix.size()), prefix);
    EXPECT_TRUE(in_symbol_space(sys, *w));
  }
  const std::vector<SymbolId> bad = to_ids(sys, std::vector<std::string>{"L", "1"});
  EXPECT_FALSE(sampler.sample(rng, bad).has_value());
}

TEST(WordSampler, ImpossibleBounds) {
  // Every cycle of this color graph has length 2.
  ReplacementSystem rs;
  rs.colors = {{"1", ColorKind::nonloop, "i", "t", ""}, {"2", ColorKind::nonloop, "i", "t", ""}};
  rs.base = {{"a", "b"}, {{"S", "a", "b", "1"}}};
  rs.replacements["1"] = {{"i", "m", "t"}, {{"x", "i", "m", "2"}, {"y", "m", "t", "2"}}};
  rs.replacements["2"] = {{"i", "m", "t"}, {{"u", "i", "m", "1"}, {"v", "m", "t", "1"}}};
  const IndexedSystem sys(rs);
  Rng rng(0);
  EXPECT_FALSE(WordSampler(sys, 3, 1).sample(rng).has_value());
  const auto w = WordSampler(sys, 3, 2).sample(rng);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->period.size(), 2u);
}

TEST(WordSampler, MutationKeepsMembership) {
  for (const auto& rs : {basilica_system(), dendrite_system(4), normalize_loops(basilica_original_system()).system}) {
    const IndexedSystem sys(rs);
    const WordSampler sampler(sys, 6, 4);
    Rng rng(77);
    std::size_t changed = 0;
    for (int k = 0; k < 300; ++k) {
      const auto w = *sampler.sample(rng);
      const auto m = sampler.mutate(rng, w);
      EXPECT_TRUE(in_symbol_space(sys, m));
      changed += m != w;
    }
    EXPECT_GT(changed, 200u);
  }
}

TEST(SamplePartner, PartnersAreGlued) {
  for (const auto& rs : {interval_system(), basilica_system(), dendrite_system(3)}) {
    const IndexedSystem sys(rs);
    const auto aut = trim(build_automaton(sys));
    const WordSampler sampler(sys, 5, 3);
    Rng rng(5);
    std::size_t found = 0;
    for (int k = 0; k < 300; ++k) {
      const auto y = *sampler.sample(rng);
      const auto x = sample_partner(aut, y, rng);
      if (!x) continue;
      ++found;
      EXPECT_TRUE(in_symbol_space(sys, *x));
      EXPECT_TRUE(glued(aut, *x, y).glued);
      EXPECT_TRUE(oracle_glued(sys, *x, y).glued);
    }
    EXPECT_GT(found, 50u);
  }
}

TEST(Fuzz, BuiltinsHaveNoDisagreements) {
  for (const auto* name : {"interval", "basilica", "dendrite:3", "dendrite:6"}) {
    const IndexedSystem sys(builtin_from_spec(name));
    FuzzOptions opt;
    opt.samples = 1000;
    const auto r = fuzz(sys, opt);
    EXPECT_EQ(r.samples, 1000u) << name;
    EXPECT_EQ(r.disagreements, 0u) << name;
    EXPECT_FALSE(r.counterexample.has_value()) << name;
    EXPECT_GT(r.glued, 0u) << name;
    std::size_t total = 0;
    for (auto n : r.per_kind) total += n;
    EXPECT_EQ(total, r.samples);
    EXPECT_GT(r.per_kind[static_cast<int>(PairKind::shared_prefix)], 400u) << name;
  }
}

TEST(Fuzz, ReportDoesNotDependOnJobs) {
  const IndexedSystem sys(basilica_system());
  FuzzOptions opt;
  opt.samples = 500;
  opt.seed = 9;
  const auto one = fuzz(sys, opt);
  opt.jobs = 4;
  const auto four = fuzz(sys, opt);
  EXPECT_EQ(fuzz_report_to_json(sys, opt, one), fuzz_report_to_json(sys, opt, four));
  opt.jobs = 64;
  opt.samples = 10;
  EXPECT_EQ(fuzz(sys, opt).samples, 10u);
}

TEST(Fuzz, PairsAreReproducible) {
  const IndexedSystem sys(basilica_system());
  const auto aut = trim(build_automaton(sys));
  FuzzOptions opt;
  const WordSampler sampler(sys, opt.max_preperiod, opt.max_period);
  for (std::size_t i = 0; i < 50; ++i) {
    const auto a = sample_pair(sampler, aut, opt, i);
    const auto b = sample_pair(sampler, aut, opt, i);
    EXPECT_EQ(a.x, b.x);
    EXPECT_EQ(a.y, b.y);
    EXPECT_EQ(a.kind, b.kind);
    EXPECT_TRUE(in_symbol_space(sys, a.x));
    EXPECT_TRUE(in_symbol_space(sys, a.y));
    EXPECT_LE(a.x.period.size(), opt.max_period);
    EXPECT_LE(a.y.period.size(), opt.max_period);
  }
}

TEST(Fuzz, ZeroSamples) {
  const IndexedSystem sys(interval_system());
  FuzzOptions opt;
  opt.samples = 0;
  opt.jobs = 4;
  const auto r = fuzz(sys, opt);
  EXPECT_EQ(r.samples, 0u);
  EXPECT_EQ(r.disagreements, 0u);
  const auto j = fuzz_report_to_json(sys, opt, r);
  EXPECT_TRUE(j["counterexample"].is_null());
  EXPECT_EQ(j["samples"], 0);
}

TEST(Fuzz, RandomSystems) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    Rng rng = trial_rng(61, seed);
    const auto rs = seed % 3 == 0 ? normalize_loops(random_system(rng, {3, 5, 6, true})).system : random_system(rng);
    FuzzOptions opt;
    opt.samples = 200;
    opt.seed = seed;
    const auto r = fuzz(IndexedSystem(rs), opt);
    EXPECT_EQ(r.disagreements, 0u) << write_system(rs);
  }
}
