#include <gtest/gtest.h>

#include "odet/automaton.hpp"
#include "support/corpus.hpp"

namespace odet {
namespace {

TEST(StateSetTest, BasicAlgebra) {
  StateSet s{1, 3, 70};
  EXPECT_EQ(s.size(), 3u);
  EXPECT_TRUE(s.contains(70));
  EXPECT_EQ(s.min(), 1);
  EXPECT_EQ(s.max(), 70);
  s.erase(70);
  EXPECT_EQ(s, (StateSet{1, 3}));
  EXPECT_TRUE((StateSet{1}).subset_of(s));
  EXPECT_FALSE(s.intersects(StateSet{2, 4}));
  EXPECT_EQ(StateSet::range(2, 4), (StateSet{2, 3, 4}));
  EXPECT_EQ(from_mask(to_mask(StateSet{1, 5})), (StateSet{1, 5}));
  EXPECT_EQ(to_mask(StateSet{1, 3}), 0b101u);
}

TEST(EvalAcceptance, Buchi) {
  EXPECT_TRUE(eval_acceptance(Buchi{{1}}, StateSet{1, 2}));
  EXPECT_FALSE(eval_acceptance(Buchi{{1}}, StateSet{2}));
  EXPECT_FALSE(eval_acceptance(Buchi{{}}, StateSet{1, 2}));
}

TEST(EvalAcceptance, ParityTakesTheLeastIntersectingIndex) {
  Parity p{{StateSet{2}, StateSet{1}}};
  EXPECT_FALSE(eval_acceptance(p, StateSet{1}));
  EXPECT_TRUE(eval_acceptance(p, StateSet{1, 2}));
  EXPECT_FALSE(eval_acceptance(p, StateSet{3}));
}

TEST(EvalAcceptance, StreettSinglePair) {
  Streett s{{{StateSet{3}, StateSet{1}}}};
  EXPECT_FALSE(eval_acceptance(s, StateSet{1, 2}));
  EXPECT_TRUE(eval_acceptance(s, StateSet{1, 3}));
  EXPECT_TRUE(eval_acceptance(s, StateSet{2}));
}

TEST(EvalAcceptance, RabinAndMuller) {
  Rabin r{{{StateSet{1}, StateSet{2}}}};
  EXPECT_TRUE(eval_acceptance(r, StateSet{2}));
  EXPECT_FALSE(eval_acceptance(r, StateSet{1, 2}));
  Muller m{{StateSet{1}, StateSet{2, 3}}};
  EXPECT_TRUE(eval_acceptance(m, StateSet{2, 3}));
  EXPECT_FALSE(eval_acceptance(m, StateSet{2}));
}

TEST(EvalAcceptance, EmersonLeiAtoms) {
  auto f = ElFormula::conj(ElFormula::inf(1), ElFormula::negate(ElFormula::disj(ElFormula::inf(2), ElFormula::fin(3))));
  EXPECT_TRUE(eval_acceptance(EmersonLei{f}, StateSet{1, 3}));
  EXPECT_FALSE(eval_acceptance(EmersonLei{f}, StateSet{1}));
  EXPECT_FALSE(eval_acceptance(EmersonLei{f}, StateSet{1, 2, 3}));
  EXPECT_EQ(f.to_string(), "Inf(1) & !(Inf(2) | Fin(3))");
}

// Parity by its definition: the least j with x ∩ F_j ≠ ∅ exists and is even.
TEST(EvalAcceptance, ParityMatchesDefinitionOnCorpus) {
  testing::RandomAutomata gen(3);
  for (int i = 0; i < 100; ++i) {
    auto a = gen.make(testing::Kind::Parity);
    const auto& p = std::get<Parity>(a.acceptance);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << a.num_states); ++mask) {
      auto x = from_mask(mask);
      int least = -1;
      for (std::size_t j = 0; j < p.sets.size() && least < 0; ++j)
        for (int q : x.elements())
          if (p.sets[j].contains(q)) least = static_cast<int>(j);
      EXPECT_EQ(eval_acceptance(p, x), least >= 0 && least % 2 == 0);
    }
  }
}

TEST(ToMuller, BuchiTwoStates) {
  OmegaAutomaton a(2, {"a"});
  a.initial = {1};
  a.acceptance = Buchi{{1}};
  auto m = to_muller(a);
  EXPECT_EQ(std::get<Muller>(m.acceptance).table, (std::vector<StateSet>{{1}, {1, 2}}));
  EXPECT_EQ(m.delta, a.delta);
}

TEST(ToMuller, RabinTwoStates) {
  OmegaAutomaton a(2, {"a"});
  a.initial = {1};
  a.acceptance = Rabin{{{StateSet{}, StateSet{2}}}};
  EXPECT_EQ(std::get<Muller>(to_muller(a).acceptance).table, (std::vector<StateSet>{{2}, {1, 2}}));
}

TEST(ToMuller, PreservesThePredicateOnCorpus) {
  testing::RandomAutomata gen(5);
  for (auto kind : testing::kAllKinds)
    for (int i = 0; i < 30; ++i) {
      auto a = gen.make(kind);
      auto m = to_muller(a);
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << a.num_states); ++mask)
        EXPECT_EQ(eval_acceptance(m.acceptance, from_mask(mask)), eval_acceptance(a.acceptance, from_mask(mask)));
    }
}

TEST(ToMuller, SizeGuard) {
  OmegaAutomaton a(21, {"a"});
  a.initial = {1};
  EXPECT_THROW(to_muller(a), LimitExceeded);
}

TEST(Successors, Images) {
  OmegaAutomaton a(3, {"a"});
  a.add_transition(1, 0, 2);
  a.add_transition(1, 0, 3);
  a.add_transition(2, 0, 2);
  EXPECT_TRUE(successors(a, {}, 0).empty());
  EXPECT_EQ(successors(a, {1}, 0), (StateSet{2, 3}));
  EXPECT_EQ(successors(a, {2}, 0), (StateSet{2}));
  EXPECT_EQ(successors(a, {1, 2}, 0), (StateSet{2, 3}));
  EXPECT_THROW(successors(a, {1}, 1), InvalidInput);
}

TEST(Validate, WellFormedAutomatonHasNoViolations) {
  testing::RandomAutomata gen(9);
  for (auto kind : testing::kAllKinds) EXPECT_TRUE(validate(gen.make(kind)).empty());
}

TEST(Validate, ReportsOutOfRangeInitial) {
  OmegaAutomaton a(2, {"a"});
  a.initial = {0};
  auto v = validate(a);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v.front().field, "initial");
}

TEST(Validate, ReportsOutOfRangeAcceptanceSet) {
  OmegaAutomaton a(5, {"a"});
  a.initial = {1};
  a.acceptance = Rabin{{{StateSet{7}, StateSet{}}}};
  auto v = validate(a);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v.front().field, "rabin.E[1]");
}

TEST(Validate, StructuralRules) {
  OmegaAutomaton a(1, {"a", "a"});
  a.initial = {1};
  a.acceptance = Muller{{StateSet{}}};
  auto v = validate(a);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0].field, "alphabet");
  EXPECT_EQ(v[1].field, "muller[0]");

  OmegaAutomaton b(1, {"a"});
  b.initial = {1};
  b.acceptance = Streett{};
  EXPECT_FALSE(validate(b).empty());
  b.acceptance = Parity{};
  EXPECT_FALSE(validate(b).empty());
  EXPECT_THROW(require_valid(b), InvalidInput);
}

TEST(Automaton, Determinism) {
  OmegaAutomaton a(2, {"a"});
  a.initial = {1};
  a.add_transition(1, 0, 2);
  EXPECT_TRUE(a.is_deterministic());
  a.add_transition(1, 0, 1);
  EXPECT_FALSE(a.is_deterministic());
  EXPECT_EQ(a.symbol("a"), 0u);
  EXPECT_THROW((void)a.symbol("z"), InvalidInput);
}

}  // namespace
}  // namespace odet
