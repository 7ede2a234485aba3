#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "odet/dpw.hpp"
#include "odet/oracle.hpp"
#include "odet/safra.hpp"

namespace odet {

/// The same automaton read as a Rabin automaton with m pairs: pair i holds
/// the priorities below 2i in E and priority 2i in F.
inline Drw dpw_to_drw(const Dpw& d) {
  Drw r;
  r.alphabet = d.alphabet;
  r.table = d.table;
  r.sink = d.sink;
  r.pairs.resize(static_cast<std::size_t>(d.m));
  for (std::size_t s = 0; s < d.size(); ++s) {
    const int p = d.priority[s];
    for (int i = 0; i < d.m; ++i) {
      if (p < 2 * i) r.pairs[static_cast<std::size_t>(i)].e.insert(static_cast<int>(s));
      if (p == 2 * i) r.pairs[static_cast<std::size_t>(i)].f.insert(static_cast<int>(s));
    }
  }
  return r;
}

/// Least n with n² + n + 1 >= k: a DRW with n states has at most that many
/// useful pairs, so a language of Rabin index k needs at least n states.
inline std::uint64_t rabin_index_state_lower_bound(std::uint64_t k) {
  if (k == 0) throw InvalidInput("Rabin index must be positive");
  auto n = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(k)));
  while (n > 0 && (n - 1) * (n - 1) + (n - 1) + 1 >= k) --n;
  while (n * n + n + 1 < k) ++n;
  return n;
}

/// ⌈√k⌉ - 1, the rounded form of the same bound.
inline std::uint64_t rabin_index_headline_bound(std::uint64_t k) {
  if (k == 0) throw InvalidInput("Rabin index must be positive");
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(k)));
  while (r * r > k) --r;
  while ((r + 1) * (r + 1) <= k) ++r;
  return (r * r == k ? r : r + 1) - 1;
}

/// Acceptance of a lasso by an OmegaAutomaton that is deterministic: the
/// unique run is followed until its (state, phase) pair repeats and the
/// acceptance condition is applied to the states on that cycle.
inline bool deterministic_accepts_lasso(const OmegaAutomaton& a, const Lasso& l) {
  if (!a.is_deterministic()) throw InvalidInput("automaton is not deterministic");
  check_lasso(l, a.alphabet_size());
  if (a.initial.empty()) return false;
  int q = a.initial.min();
  auto step = [&](Symbol s) {
    const auto& next = a.post(q, s);
    q = next.empty() ? 0 : next.min();
    return q != 0;
  };
  for (auto s : l.stem)
    if (!step(s)) return false;
  const std::size_t len = l.loop.size();
  std::vector<std::size_t> seen(static_cast<std::size_t>(a.num_states) * len + 1, 0);
  std::vector<int> trace;
  for (std::size_t time = 0;; ++time) {
    const std::size_t phase = time % len;
    auto& slot = seen[static_cast<std::size_t>(q - 1) * len + phase];
    if (slot) {
      StateSet x(trace.begin() + static_cast<std::ptrdiff_t>(slot - 1), trace.end());
      return eval_acceptance(a.acceptance, x);
    }
    slot = time + 1;
    trace.push_back(q);
    if (!step(l.loop[phase])) return false;
  }
}

struct Disagreement {
  Lasso lasso;
  bool expected = false;  // the reference side
  bool actual = false;
};

struct EquivalenceReport {
  std::size_t total_lassos = 0;
  std::size_t stem_max = 0;
  std::size_t loop_max = 0;
  std::vector<Disagreement> disagreements;

  [[nodiscard]] bool equivalent() const { return disagreements.empty(); }
};

inline constexpr std::size_t kDefaultLassoBudget = 10'000'000;

/// Compares two lasso predicates on every lasso within the bounds.
inline EquivalenceReport compare_on_lassos(std::size_t alphabet_size, std::size_t stem_max, std::size_t loop_max,
                                           const std::function<bool(const Lasso&)>& reference,
                                           const std::function<bool(const Lasso&)>& candidate,
                                           std::size_t budget = kDefaultLassoBudget) {
  const auto total = lasso_count(alphabet_size, stem_max, loop_max);
  if (budget && total > budget)
    throw LimitExceeded(std::to_string(total) + " lassos exceed the budget of " + std::to_string(budget), 0);
  EquivalenceReport r;
  r.stem_max = stem_max;
  r.loop_max = loop_max;
  for_each_lasso(alphabet_size, stem_max, loop_max, [&](const Lasso& l) {
    ++r.total_lassos;
    bool want = reference(l);
    bool got = candidate(l);
    if (want != got) r.disagreements.push_back({l, want, got});
  });
  return r;
}

inline void require_same_alphabet(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a != b) throw InvalidInput("automata have different alphabets");
}

/// The oracle's verdicts on `a` against the DPW's.
inline EquivalenceReport check_equivalence(const OmegaAutomaton& a, const Dpw& d, std::size_t stem_max,
                                           std::size_t loop_max, std::size_t budget = kDefaultLassoBudget) {
  require_same_alphabet(a.alphabet, d.alphabet);
  return compare_on_lassos(
      a.alphabet_size(), stem_max, loop_max, [&](const Lasso& l) { return accepts_lasso(a, l); },
      [&](const Lasso& l) { return dpw_accepts_lasso(d, l); }, budget);
}

inline EquivalenceReport check_equivalence(const OmegaAutomaton& a, const Drw& d, std::size_t stem_max,
                                           std::size_t loop_max, std::size_t budget = kDefaultLassoBudget) {
  require_same_alphabet(a.alphabet, d.alphabet);
  return compare_on_lassos(
      a.alphabet_size(), stem_max, loop_max, [&](const Lasso& l) { return accepts_lasso(a, l); },
      [&](const Lasso& l) { return drw_accepts_lasso(d, l); }, budget);
}

/// Oracle on `spec` against `impl`; a deterministic `impl` is run directly.
inline EquivalenceReport check_equivalence(const OmegaAutomaton& spec, const OmegaAutomaton& impl,
                                           std::size_t stem_max, std::size_t loop_max,
                                           std::size_t budget = kDefaultLassoBudget) {
  require_same_alphabet(spec.alphabet, impl.alphabet);
  const bool direct = impl.is_deterministic();
  return compare_on_lassos(
      spec.alphabet_size(), stem_max, loop_max, [&](const Lasso& l) { return accepts_lasso(spec, l); },
      [&](const Lasso& l) { return direct ? deterministic_accepts_lasso(impl, l) : accepts_lasso(impl, l); },
      budget);
}

/// A DPW as an OmegaAutomaton with states 1..N and the 2m priority sets
/// listed explicitly (unused priorities give empty sets).
inline OmegaAutomaton to_automaton(const Dpw& d) {
  const auto n = static_cast<int>(d.size());
  OmegaAutomaton a(n, d.alphabet);
  a.initial.insert(static_cast<int>(d.table.initial) + 1);
  for (int s = 0; s < n; ++s)
    for (Symbol x = 0; x < d.alphabet.size(); ++x)
      a.add_transition(s + 1, x, static_cast<int>(d.table(static_cast<std::size_t>(s), x)) + 1);
  Parity p;
  p.sets.resize(static_cast<std::size_t>(2 * d.m));
  for (int s = 0; s < n; ++s) p.sets[static_cast<std::size_t>(d.priority[static_cast<std::size_t>(s)])].insert(s + 1);
  a.acceptance = std::move(p);
  return a;
}

/// A DRW as an OmegaAutomaton with states 1..N and its Rabin pairs.
inline OmegaAutomaton to_automaton(const Drw& d) {
  const auto n = static_cast<int>(d.size());
  OmegaAutomaton a(n, d.alphabet);
  a.initial.insert(static_cast<int>(d.table.initial) + 1);
  for (int s = 0; s < n; ++s)
    for (Symbol x = 0; x < d.alphabet.size(); ++x)
      a.add_transition(s + 1, x, static_cast<int>(d.table(static_cast<std::size_t>(s), x)) + 1);
  Rabin r;
  for (const auto& p : d.pairs) {
    StatePair q;
    for (int s : p.e.elements()) q.e.insert(s + 1);
    for (int s : p.f.elements()) q.f.insert(s + 1);
    r.pairs.push_back(std::move(q));
  }
  a.acceptance = std::move(r);
  return a;
}

}  // namespace odet
