#pragma once

// The Streett family on which Safra-style trees can encode many
// permutations of pair indices, and the count of block permutations.
//
// State layout for parameter n: q_0 is state 1, the bottom states
// q_(i,⊥) are 2 + i, the s-states q_(i,s) are 2 + n + i and the top
// states q_(i,⊤) are 2 + 2n + i. Pair indices are -1, 1, 2, ..., 2^n;
// pair -1 is stored first and pair j is stored at position j.

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "odet/automaton.hpp"
#include "odet/dpw.hpp"
#include "odet/safra.hpp"

namespace odet {

inline constexpr int kDefaultFamilyCap = 12;

struct FamilyLayout {
  int n;
  [[nodiscard]] int q0() const { return 1; }
  [[nodiscard]] int bottom(int i) const { return 2 + i; }
  [[nodiscard]] int s_state(int i) const { return 2 + n + i; }
  [[nodiscard]] int top(int i) const { return 2 + 2 * n + i; }
  [[nodiscard]] int num_states() const { return 3 * n + 1; }
  [[nodiscard]] int num_pairs() const { return (1 << n) + 1; }
  /// k = ⌊2^n / n⌋, the number of blocks.
  [[nodiscard]] int blocks() const { return (1 << n) / n; }
  /// Position in Streett::pairs of pair index j (j = -1 or 1..2^n).
  [[nodiscard]] static std::size_t slot(int j) { return j < 0 ? 0 : static_cast<std::size_t>(j); }

  [[nodiscard]] Symbol letter(int i) const { return static_cast<Symbol>(i); }
  [[nodiscard]] Symbol s_letter(int i) const { return static_cast<Symbol>(n + i); }
  [[nodiscard]] Symbol bot_letter() const { return static_cast<Symbol>(2 * n); }
};

inline OmegaAutomaton build_family_nsw(int n, int cap = kDefaultFamilyCap) {
  if (n < 2) throw InvalidInput("family parameter n must be at least 2");
  if (n > cap) throw LimitExceeded("family parameter n = " + std::to_string(n) + " exceeds the cap " + std::to_string(cap), 0);
  const FamilyLayout L{n};

  std::vector<std::string> sigma;
  for (int i = 0; i < n; ++i) sigma.push_back("a" + std::to_string(i));
  for (int i = 0; i < n; ++i) sigma.push_back("as" + std::to_string(i));
  sigma.push_back("abot");

  OmegaAutomaton a(L.num_states(), sigma);
  a.initial.insert(L.q0());
  for (int i = 0; i < n; ++i) a.add_transition(L.q0(), L.letter(0), L.top(i));
  for (int i = 0; i < n; ++i) {
    a.add_transition(L.top(i), L.bot_letter(), L.top(i));
    a.add_transition(L.top(i), L.letter(i), L.s_state(i));
    for (int j = 0; j < n; ++j) {
      a.add_transition(L.s_state(i), L.s_letter(j), L.s_state(j));
      a.add_transition(L.top(i), L.s_letter(j), L.top(i));
      a.add_transition(L.bottom(i), L.s_letter(j), L.bottom(i));
      a.add_transition(L.bottom(i), L.letter(j), L.bottom(i));
    }
    a.add_transition(L.s_state(i), L.bot_letter(), L.bottom(i));
    a.add_transition(L.bottom(i), L.bot_letter(), L.bottom(i));
  }

  Streett acc;
  acc.pairs.resize(static_cast<std::size_t>(L.num_pairs()));
  const int top_pair = 1 << n;
  for (int i = 0; i < n; ++i) {
    acc.pairs[FamilyLayout::slot(top_pair)].f.insert(L.top(i));
    acc.pairs[FamilyLayout::slot(-1)].f.insert(L.bottom(i));
    for (int r = 0; r < L.blocks(); ++r) acc.pairs[FamilyLayout::slot(top_pair - r * n - i)].e.insert(L.s_state(i));
  }
  a.acceptance = std::move(acc);
  return a;
}

struct ConstraintViolation {
  int constraint = 0;  // 1..6; 0 for a shape mismatch
  std::string message;
};

/// Checks the six pair constraints of the family on an automaton laid out
/// as build_family_nsw lays it out.
inline std::vector<ConstraintViolation> verify_family_constraints(const OmegaAutomaton& a) {
  std::vector<ConstraintViolation> out;
  const auto* acc = std::get_if<Streett>(&a.acceptance);
  if (!acc || a.num_states < 7 || (a.num_states - 1) % 3 != 0) {
    out.push_back({0, "not a Streett automaton with 3n+1 states"});
    return out;
  }
  const FamilyLayout L{(a.num_states - 1) / 3};
  if (L.n > 30 || acc->pairs.size() != static_cast<std::size_t>(L.num_pairs())) {
    out.push_back({0, "pair count is not 2^n + 1"});
    return out;
  }
  const int h = 1 << L.n;
  auto E = [&](int j) -> const StateSet& { return acc->pairs[FamilyLayout::slot(j)].e; };
  auto F = [&](int j) -> const StateSet& { return acc->pairs[FamilyLayout::slot(j)].f; };
  auto fail = [&](int c, std::string msg) { out.push_back({c, std::move(msg)}); };
  auto qname = [](const char* kind, int i) { return std::string("q(") + std::to_string(i) + "," + kind + ")"; };

  for (int i = 0; i < L.n; ++i) {
    if (!F(h).contains(L.top(i))) fail(1, qname("top", i) + " missing from F_" + std::to_string(h));
    if (E(h).contains(L.top(i))) fail(1, qname("top", i) + " present in E_" + std::to_string(h));
  }
  for (int i = 0; i < L.n; ++i)
    for (int j = 1; j <= h; ++j) {
      if (E(j).contains(L.bottom(i))) fail(2, qname("bot", i) + " present in E_" + std::to_string(j));
      if (F(j).contains(L.bottom(i))) fail(3, qname("bot", i) + " present in F_" + std::to_string(j));
    }
  for (int i = 0; i < L.n; ++i)
    if (!F(-1).contains(L.bottom(i))) fail(4, qname("bot", i) + " missing from F_-1");
  for (int r = 0; r < L.blocks(); ++r)
    for (int i = 0; i < L.n; ++i) {
      const int j = h - r * L.n - i;
      if (E(j) != StateSet{L.s_state(i)}) fail(5, "E_" + std::to_string(j) + " is not {" + qname("s", i) + "}");
      for (int t = 0; t < L.n; ++t) {
        if (!F(h - r * L.n - t).contains(L.s_state(i))) continue;
        if (t != i) fail(5, qname("s", i) + " present in F_" + std::to_string(h - r * L.n - t));
        fail(6, qname("s", i) + " present in F_" + std::to_string(h - r * L.n - t));
      }
    }
  return out;
}

/// (n! · k^n)^n with k = ⌊2^n / n⌋.
inline boost::multiprecision::cpp_int block_permutation_count(int n) {
  using boost::multiprecision::cpp_int;
  if (n < 1) throw InvalidInput("block_permutation_count needs n >= 1");
  cpp_int k = (cpp_int(1) << n) / n;
  cpp_int branch = 1;
  for (int i = 2; i <= n; ++i) branch *= i;
  branch *= boost::multiprecision::pow(k, static_cast<unsigned>(n));
  return boost::multiprecision::pow(branch, static_cast<unsigned>(n));
}

struct ConstructionCount {
  std::size_t states = 0;
  std::size_t max_tree_nodes = 0;
  double seconds = 0;
  bool complete = true;
};

struct StateCountComparison {
  ConstructionCount cgs;
  ConstructionCount safra;
  /// Safra trees counted with names forgotten; 0 when the Safra run was
  /// cut off by a limit.
  std::size_t safra_unnamed = 0;
};

/// Runs both determinizations on the family member for `n`. A construction
/// that hits a limit reports how far it got with complete = false.
inline StateCountComparison compare_state_counts(int n, const ExplorationLimits& limits) {
  const auto a = build_family_nsw(n);
  StateCountComparison out;
  auto record = [](ConstructionCount& c, const ExplorationStats& s) {
    c.states = s.states;
    c.max_tree_nodes = s.max_tree_nodes;
    c.seconds = s.seconds;
    c.complete = s.complete;
  };
  {
    ExplorationStats s;
    try {
      determinize(a, DeterminizeOptions{limits, false}, s);
    } catch (const LimitExceeded&) {
      s.complete = false;
    }
    record(out.cgs, s);
  }
  {
    ExplorationStats s;
    try {
      auto d = determinize_streett_safra(a, SafraOptions{limits, false}, s);
      out.safra_unnamed = count_unnamed(d.trees);
    } catch (const LimitExceeded&) {
      s.complete = false;
    }
    record(out.safra, s);
  }
  return out;
}

}  // namespace odet
