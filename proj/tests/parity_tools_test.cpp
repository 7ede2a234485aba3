#include <gtest/gtest.h>

#include "odet/parity_tools.hpp"
#include "support/corpus.hpp"
#include "support/reference.hpp"

namespace odet {
namespace {

Dpw constant_dpw(std::vector<int> priorities, std::vector<std::size_t> next, int m) {
  Dpw d;
  d.alphabet = {"a"};
  d.m = m;
  d.table.num_symbols = 1;
  d.table.next = std::move(next);
  d.priority = std::move(priorities);
  return d;
}

TEST(DpwAcceptsLasso, MinimumPriorityOnTheCycleDecides) {
  auto odd = constant_dpw({1, 1}, {1, 0}, 2);
  EXPECT_FALSE(dpw_accepts_lasso(odd, {{}, {0}}));
  auto with_zero = constant_dpw({3, 0}, {1, 0}, 2);
  EXPECT_TRUE(dpw_accepts_lasso(with_zero, {{}, {0}}));
  // The transient state 0 with priority 0 is left behind.
  auto transient = constant_dpw({0, 1}, {1, 1}, 2);
  EXPECT_FALSE(dpw_accepts_lasso(transient, {{}, {0}}));
}

TEST(DpwAcceptsLasso, RotationAndUnrollingOnCorpus) {
  testing::RandomAutomata gen(61);
  for (int i = 0; i < 30; ++i) {
    auto d = determinize(gen.make(testing::Kind::Buchi));
    for_each_lasso(2, 2, 3, [&](const Lasso& l) {
      const bool v = dpw_accepts_lasso(d, l);
      Lasso twice = l;
      twice.loop.insert(twice.loop.end(), l.loop.begin(), l.loop.end());
      EXPECT_EQ(dpw_accepts_lasso(d, twice), v);
      Lasso rot{l.stem, {}};
      rot.stem.push_back(l.loop.front());
      rot.loop.assign(l.loop.begin() + 1, l.loop.end());
      rot.loop.push_back(l.loop.front());
      EXPECT_EQ(dpw_accepts_lasso(d, rot), v);
    });
  }
}

TEST(DpwToDrw, AllOddGivesEmptyFSets) {
  auto r = dpw_to_drw(constant_dpw({1, 1}, {1, 0}, 3));
  ASSERT_EQ(r.pairs.size(), 3u);
  for (const auto& p : r.pairs) EXPECT_TRUE(p.f.empty());
  for_each_lasso(1, 2, 3, [&](const Lasso& l) { EXPECT_FALSE(drw_accepts_lasso(r, l)); });
}

TEST(DpwToDrw, PairShapes) {
  auto r = dpw_to_drw(constant_dpw({0, 3, 2}, {1, 2, 0}, 2));
  ASSERT_EQ(r.pairs.size(), 2u);
  EXPECT_EQ(r.pairs[0].e, StateSet{});
  EXPECT_EQ(r.pairs[0].f, (StateSet{0}));
  EXPECT_EQ(r.pairs[1].e, (StateSet{0}));
  EXPECT_EQ(r.pairs[1].f, (StateSet{2}));
}

TEST(DpwToDrw, PreservesVerdictsAndPairBound) {
  testing::RandomAutomata gen(62);
  for (auto kind : testing::kAllKinds)
    for (int i = 0; i < 20; ++i) {
      auto a = gen.make(kind);
      auto d = determinize(a);
      auto r = dpw_to_drw(d);
      EXPECT_LE(r.pairs.size(), static_cast<std::size_t>(cgs_name_bound(a.num_states)));
      for_each_lasso(2, 3, 3, [&](const Lasso& l) { ASSERT_EQ(drw_accepts_lasso(r, l), dpw_accepts_lasso(d, l)); });
    }
}

TEST(LowerBound, Examples) {
  EXPECT_EQ(rabin_index_state_lower_bound(1), 0u);
  EXPECT_EQ(rabin_index_state_lower_bound(3), 1u);
  EXPECT_EQ(rabin_index_state_lower_bound(8), 3u);
  EXPECT_EQ(rabin_index_state_lower_bound(7), 2u);
  EXPECT_EQ(rabin_index_headline_bound(1), 0u);
  EXPECT_EQ(rabin_index_headline_bound(10), 3u);
  EXPECT_EQ(rabin_index_headline_bound(16), 3u);
  EXPECT_THROW(rabin_index_state_lower_bound(0), InvalidInput);
}

TEST(LowerBound, LeastSolutionMonotoneAndAboveHeadline) {
  std::uint64_t prev = 0;
  for (std::uint64_t k = 1; k <= 10000; ++k) {
    std::uint64_t n = 0;
    while (n * n + n + 1 < k) ++n;
    const auto got = rabin_index_state_lower_bound(k);
    ASSERT_EQ(got, n) << k;
    ASSERT_GE(got, prev);
    prev = got;
    std::uint64_t c = 0;
    while (c * c < k) ++c;
    ASSERT_EQ(rabin_index_headline_bound(k), c - 1) << k;
    ASSERT_GE(got, c - 1) << k;
  }
}

TEST(LowerBound, LargeInputs) {
  for (std::uint64_t k : {std::uint64_t{1} << 40, (std::uint64_t{1} << 52) + 3, std::uint64_t{999999999999}}) {
    const auto n = rabin_index_state_lower_bound(k);
    EXPECT_GE(n * n + n + 1, k);
    EXPECT_LT((n - 1) * (n - 1) + (n - 1) + 1, k);
  }
}

TEST(CheckEquivalence, DeterminizedWalkthroughHasNoDisagreement) {
  auto a = testing::muller_walkthrough();
  auto r = check_equivalence(a, determinize(a), 3, 4);
  EXPECT_EQ(r.total_lassos, lasso_count(2, 3, 4));
  EXPECT_TRUE(r.equivalent());
}

TEST(CheckEquivalence, FlippedPriorityIsCaught) {
  auto a = testing::single_loop_buchi();
  auto d = determinize(a);
  auto r = check_equivalence(a, d, 2, 3);
  ASSERT_TRUE(r.equivalent());
  for (auto& p : d.priority) p = p % 2 == 0 ? p + 1 : p;
  r = check_equivalence(a, d, 2, 3);
  ASSERT_FALSE(r.equivalent());
  EXPECT_TRUE(r.disagreements.front().expected);
  EXPECT_FALSE(r.disagreements.front().actual);
}

TEST(CheckEquivalence, EmptyLanguage) {
  auto a = testing::muller_walkthrough();
  a.acceptance = Buchi{{}};
  auto d = determinize(a);
  auto r = check_equivalence(a, d, 3, 3);
  EXPECT_TRUE(r.equivalent());
  for_each_lasso(2, 3, 3, [&](const Lasso& l) { EXPECT_FALSE(dpw_accepts_lasso(d, l)); });
}

TEST(CheckEquivalence, BudgetAndAlphabetChecks) {
  auto a = testing::muller_walkthrough();
  auto d = determinize(a);
  EXPECT_THROW(check_equivalence(a, d, 3, 4, 10), LimitExceeded);
  auto b = a;
  b.alphabet = {"x", "y"};
  EXPECT_THROW(check_equivalence(b, d, 1, 1), InvalidInput);
}

TEST(ToAutomaton, DpwRoundTripKeepsTheLanguage) {
  testing::RandomAutomata gen(63);
  for (int i = 0; i < 20; ++i) {
    auto a = gen.make(testing::Kind::Rabin);
    auto d = determinize(a);
    auto as = to_automaton(d);
    EXPECT_TRUE(validate(as).empty());
    EXPECT_TRUE(as.is_deterministic());
    EXPECT_EQ(std::get<Parity>(as.acceptance).sets.size(), static_cast<std::size_t>(2 * d.m));
    for_each_lasso(2, 2, 3, [&](const Lasso& l) { EXPECT_EQ(deterministic_accepts_lasso(as, l), dpw_accepts_lasso(d, l)); });
  }
}

TEST(ToAutomaton, DrwRoundTripKeepsTheLanguage) {
  testing::RandomAutomata gen(64);
  testing::RandomAutomata::Shape shape;
  shape.max_states = 3;
  for (int i = 0; i < 20; ++i) {
    auto d = determinize_streett_safra(gen.make(testing::Kind::Streett, shape));
    auto as = to_automaton(d);
    EXPECT_TRUE(validate(as).empty());
    for_each_lasso(2, 2, 3, [&](const Lasso& l) { EXPECT_EQ(deterministic_accepts_lasso(as, l), drw_accepts_lasso(d, l)); });
  }
}

TEST(DeterministicAcceptsLasso, RejectsNondeterministicInput) {
  OmegaAutomaton a(2, {"a"});
  a.initial = {1};
  a.add_transition(1, 0, 1);
  a.add_transition(1, 0, 2);
  EXPECT_THROW(deterministic_accepts_lasso(a, {{}, {0}}), InvalidInput);
}

}  // namespace
}  // namespace odet
