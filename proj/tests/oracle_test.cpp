#include <gtest/gtest.h>

#include <set>

#include "odet/oracle.hpp"
#include "support/corpus.hpp"
#include "support/reference.hpp"

namespace odet {
namespace {

// Independent reference: transitive closure (Warshall) of the lasso
// product. X is realizable iff some reachable vertex inside X lies on a
// closed walk within X that touches every state of X.
std::set<std::uint64_t> closure_infinity_sets(const OmegaAutomaton& a, const Lasso& l) {
  const int n = a.num_states;
  StateSet start = a.initial;
  for (auto s : l.stem) start = successors(a, start, s);
  const std::size_t len = l.loop.size();
  const std::size_t nv = static_cast<std::size_t>(n) * len;
  auto vid = [&](int q, std::size_t i) { return static_cast<std::size_t>(q - 1) * len + i; };

  auto closure = [&](std::uint64_t allowed) {
    std::vector<std::vector<bool>> r(nv, std::vector<bool>(nv, false));
    for (int q = 1; q <= n; ++q) {
      if (!(allowed >> (q - 1) & 1)) continue;
      for (std::size_t i = 0; i < len; ++i)
        for (int p : a.post(q, l.loop[i]).elements())
          if (allowed >> (p - 1) & 1) r[vid(q, i)][vid(p, (i + 1) % len)] = true;
    }
    for (std::size_t k = 0; k < nv; ++k)
      for (std::size_t i = 0; i < nv; ++i)
        if (r[i][k])
          for (std::size_t j = 0; j < nv; ++j)
            if (r[k][j]) r[i][j] = true;
    return r;
  };

  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  auto full = closure(all);
  std::vector<bool> reachable(nv, false);
  for (int s : start.elements()) {
    reachable[vid(s, 0)] = true;
    for (std::size_t j = 0; j < nv; ++j)
      if (full[vid(s, 0)][j]) reachable[j] = true;
  }

  std::set<std::uint64_t> out;
  for (std::uint64_t x = 1; x <= all; ++x) {
    auto r = closure(x);
    bool found = false;
    for (int q = 1; q <= n && !found; ++q) {
      if (!(x >> (q - 1) & 1)) continue;
      for (std::size_t i = 0; i < len && !found; ++i) {
        auto v = vid(q, i);
        if (!reachable[v] || !r[v][v]) continue;
        bool covers = true;
        for (int p = 1; p <= n && covers; ++p) {
          if (!(x >> (p - 1) & 1)) continue;
          bool hit = false;
          for (std::size_t k = 0; k < len && !hit; ++k) hit = r[v][vid(p, k)] && r[vid(p, k)][v];
          covers = hit;
        }
        found = covers;
      }
    }
    if (found) out.insert(x);
  }
  return out;
}

std::set<std::uint64_t> masks(const std::vector<StateSet>& sets) {
  std::set<std::uint64_t> out;
  for (const auto& s : sets) out.insert(to_mask(s));
  return out;
}

TEST(RealizableInfinitySets, SingleLoop) {
  auto a = testing::single_loop_buchi();
  EXPECT_EQ(realizable_infinity_sets(a, {{}, {0}}), (std::vector<StateSet>{{1}}));
}

TEST(RealizableInfinitySets, StayOrJump) {
  OmegaAutomaton a(2, {"a"});
  a.initial = {1};
  a.add_transition(1, 0, 1);
  a.add_transition(1, 0, 2);
  a.add_transition(2, 0, 2);
  EXPECT_EQ(realizable_infinity_sets(a, {{}, {0}}), (std::vector<StateSet>{{1}, {2}}));
}

TEST(RealizableInfinitySets, DeadAutomaton) {
  OmegaAutomaton a(2, {"a", "b"});
  a.initial = {1};
  a.add_transition(1, 0, 2);
  EXPECT_TRUE(realizable_infinity_sets(a, {{0}, {0}}).empty());
  EXPECT_TRUE(realizable_infinity_sets(a, {{1}, {0}}).empty());
}

TEST(RealizableInfinitySets, BoundAndAlphabetChecks) {
  OmegaAutomaton big(13, {"a"});
  big.initial = {1};
  EXPECT_THROW(realizable_infinity_sets(big, {{}, {0}}), LimitExceeded);
  EXPECT_NO_THROW(realizable_infinity_sets(big, {{}, {0}}, 13));
  auto a = testing::single_loop_buchi();
  EXPECT_THROW(realizable_infinity_sets(a, {{}, {1}}), InvalidInput);
  EXPECT_THROW(realizable_infinity_sets(a, {{0}, {}}), InvalidInput);
}

TEST(RealizableInfinitySets, MatchesClosureReferenceOnCorpus) {
  testing::RandomAutomata gen(21);
  for (int i = 0; i < 120; ++i) {
    auto a = gen.make(testing::Kind::Buchi);
    for_each_lasso(2, 2, 3, [&](const Lasso& l) {
      ASSERT_EQ(masks(realizable_infinity_sets(a, l)), closure_infinity_sets(a, l))
          << "automaton " << i << " " << to_string(l, a.alphabet);
    });
  }
}

TEST(AcceptsLasso, Examples) {
  OmegaAutomaton a(1, {"c"});
  a.initial = {1};
  a.add_transition(1, 0, 1);
  a.acceptance = Muller{{StateSet{1}}};
  EXPECT_TRUE(accepts_lasso(a, {{}, {0}}));

  a.acceptance = Buchi{{}};
  for_each_lasso(1, 2, 3, [&](const Lasso& l) { EXPECT_FALSE(accepts_lasso(a, l)); });

  auto w = testing::muller_walkthrough();
  EXPECT_TRUE(accepts_lasso(w, {{0, 0, 0}, {1}}));
  EXPECT_FALSE(accepts_lasso(w, {{}, {0}}));
}

TEST(AcceptsLasso, RotationAndUnrollingDoNotChangeTheVerdict) {
  testing::RandomAutomata gen(33);
  for (auto kind : testing::kAllKinds)
    for (int i = 0; i < 15; ++i) {
      auto a = gen.make(kind);
      for_each_lasso(2, 2, 3, [&](const Lasso& l) {
        const bool v = accepts_lasso(a, l);
        Lasso twice{l.stem, l.loop};
        twice.loop.insert(twice.loop.end(), l.loop.begin(), l.loop.end());
        EXPECT_EQ(accepts_lasso(a, twice), v);
        for (std::size_t k = 1; k < l.loop.size(); ++k) {
          Lasso rot{l.stem, {}};
          rot.stem.insert(rot.stem.end(), l.loop.begin(), l.loop.begin() + static_cast<std::ptrdiff_t>(k));
          rot.loop.insert(rot.loop.end(), l.loop.begin() + static_cast<std::ptrdiff_t>(k), l.loop.end());
          rot.loop.insert(rot.loop.end(), l.loop.begin(), l.loop.begin() + static_cast<std::ptrdiff_t>(k));
          EXPECT_EQ(accepts_lasso(a, rot), v);
        }
      });
    }
}

// A witness must be an actual run of the automaton on the word whose
// cycle visits exactly X.
TEST(WitnessRun, EveryRealizableSetHasAConcreteRun) {
  testing::RandomAutomata gen(44);
  for (int i = 0; i < 40; ++i) {
    auto a = gen.make(testing::Kind::Muller);
    for_each_lasso(2, 2, 2, [&](const Lasso& l) {
      for (const auto& x : realizable_infinity_sets(a, l)) {
        auto w = witness_run(a, l, x);
        ASSERT_TRUE(w.has_value());
        ASSERT_FALSE(w->cycle.empty());
        ASSERT_EQ(w->cycle.size() % l.loop.size(), 0u);
        std::vector<int> run = w->prefix;
        run.insert(run.end(), w->cycle.begin(), w->cycle.end());
        run.push_back(w->cycle.front());
        ASSERT_TRUE(a.initial.contains(run.front()));
        for (std::size_t t = 0; t + 1 < run.size(); ++t) {
          Symbol s = t < l.stem.size() ? l.stem[t] : l.loop[(t - l.stem.size()) % l.loop.size()];
          ASSERT_TRUE(a.post(run[t], s).contains(run[t + 1]));
        }
        EXPECT_EQ(StateSet(w->cycle.begin(), w->cycle.end()), x);
      }
    });
  }
}

}  // namespace
}  // namespace odet
