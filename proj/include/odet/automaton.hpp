#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "odet/acceptance.hpp"
#include "odet/error.hpp"
#include "odet/state_set.hpp"

namespace odet {

using Symbol = std::size_t;  // index into OmegaAutomaton::alphabet

/// Nondeterministic ω-automaton over states 1..num_states with an
/// infinity-set acceptance condition. Transitions may be partial.
struct OmegaAutomaton {
  int num_states = 0;
  std::vector<std::string> alphabet;
  StateSet initial;
  /// delta[(q - 1) * |alphabet| + a]; empty set means no successor.
  std::vector<StateSet> delta;
  AcceptanceCondition acceptance = Buchi{};

  OmegaAutomaton() = default;
  OmegaAutomaton(int n, std::vector<std::string> sigma)
      : num_states(n), alphabet(std::move(sigma)),
        delta(static_cast<std::size_t>(n) * alphabet.size()) {}

  [[nodiscard]] std::size_t alphabet_size() const { return alphabet.size(); }

  [[nodiscard]] const StateSet& post(int q, Symbol a) const {
    return delta[static_cast<std::size_t>(q - 1) * alphabet.size() + a];
  }
  StateSet& post(int q, Symbol a) {
    return delta[static_cast<std::size_t>(q - 1) * alphabet.size() + a];
  }

  void add_transition(int from, Symbol a, int to) { post(from, a).insert(to); }

  [[nodiscard]] std::optional<Symbol> symbol_index(std::string_view name) const {
    for (std::size_t i = 0; i < alphabet.size(); ++i)
      if (alphabet[i] == name) return i;
    return std::nullopt;
  }

  [[nodiscard]] Symbol symbol(std::string_view name) const {
    auto s = symbol_index(name);
    if (!s) throw InvalidInput("unknown symbol '" + std::string(name) + "'");
    return *s;
  }

  [[nodiscard]] StateSet all_states() const { return StateSet::range(1, num_states); }

  /// At most one initial state and at most one successor per (state, symbol).
  [[nodiscard]] bool is_deterministic() const {
    if (initial.size() > 1) return false;
    for (const auto& s : delta)
      if (s.size() > 1) return false;
    return true;
  }

  friend bool operator==(const OmegaAutomaton&, const OmegaAutomaton&) = default;
};

/// Image of `s` under `sym`.
inline StateSet successors(const OmegaAutomaton& a, const StateSet& s, Symbol sym) {
  if (sym >= a.alphabet_size())
    throw InvalidInput("symbol index " + std::to_string(sym) + " is not in the alphabet");
  StateSet out;
  for (int q : s.elements())
    if (q >= 1 && q <= a.num_states) out |= a.post(q, sym);
  return out;
}

struct Violation {
  std::string field;
  std::string message;
  friend bool operator==(const Violation&, const Violation&) = default;
};

namespace detail {

inline void check_range(const StateSet& s, int n, const std::string& field,
                        std::vector<Violation>& out) {
  for (int q : s.elements())
    if (q < 1 || q > n)
      out.push_back({field, "state " + std::to_string(q) + " out of range 1.." + std::to_string(n)});
}

}  // namespace detail

/// Lists every broken structural invariant; empty means well formed.
inline std::vector<Violation> validate(const OmegaAutomaton& a) {
  std::vector<Violation> out;
  const int n = a.num_states;
  if (n < 1) out.push_back({"states", "automaton needs at least one state"});
  if (a.alphabet.empty()) out.push_back({"alphabet", "alphabet is empty"});
  for (std::size_t i = 0; i < a.alphabet.size(); ++i)
    for (std::size_t j = i + 1; j < a.alphabet.size(); ++j)
      if (a.alphabet[i] == a.alphabet[j])
        out.push_back({"alphabet", "duplicate symbol '" + a.alphabet[i] + "' at positions " +
                                       std::to_string(i) + " and " + std::to_string(j)});
  if (a.initial.empty()) out.push_back({"initial", "no initial state"});
  detail::check_range(a.initial, n, "initial", out);
  if (a.delta.size() != static_cast<std::size_t>(std::max(n, 0)) * a.alphabet.size()) {
    out.push_back({"delta", "transition table has wrong shape"});
  } else {
    for (int q = 1; q <= n; ++q)
      for (Symbol s = 0; s < a.alphabet.size(); ++s)
        detail::check_range(a.post(q, s), n,
                            "delta[" + std::to_string(q) + "," + a.alphabet[s] + "]", out);
  }

  auto pair_check = [&](const std::vector<StatePair>& pairs, const char* kind) {
    if (pairs.empty()) out.push_back({"acceptance", std::string(kind) + " needs at least one pair"});
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      detail::check_range(pairs[i].e, n, std::string(kind) + ".E[" + std::to_string(i + 1) + "]", out);
      detail::check_range(pairs[i].f, n, std::string(kind) + ".F[" + std::to_string(i + 1) + "]", out);
    }
  };
  std::visit(Overloaded{
                 [&](const Buchi& c) { detail::check_range(c.accepting, n, "buchi", out); },
                 [&](const Muller& c) {
                   for (std::size_t i = 0; i < c.table.size(); ++i) {
                     if (c.table[i].empty())
                       out.push_back({"muller[" + std::to_string(i) + "]", "empty Muller set"});
                     detail::check_range(c.table[i], n, "muller[" + std::to_string(i) + "]", out);
                   }
                 },
                 [&](const Rabin& c) { pair_check(c.pairs, "rabin"); },
                 [&](const Streett& c) { pair_check(c.pairs, "streett"); },
                 [&](const Parity& c) {
                   if (c.sets.empty()) out.push_back({"parity", "empty priority sequence"});
                   for (std::size_t i = 0; i < c.sets.size(); ++i)
                     detail::check_range(c.sets[i], n, "parity[" + std::to_string(i) + "]", out);
                 },
                 [&](const EmersonLei& c) {
                   c.formula.for_each_atom([&](int q) {
                     if (q < 1 || q > n)
                       out.push_back({"el", "atom state " + std::to_string(q) + " out of range"});
                   });
                 },
             },
             a.acceptance);
  return out;
}

inline void require_valid(const OmegaAutomaton& a) {
  auto v = validate(a);
  if (!v.empty()) throw InvalidInput(v.front().field + ": " + v.front().message);
}

/// Same transition structure with the acceptance condition listed
/// explicitly as the Muller table of every accepted nonempty subset,
/// in increasing bitmask order.
inline OmegaAutomaton to_muller(const OmegaAutomaton& a, int max_states = 20) {
  if (a.num_states > max_states)
    throw LimitExceeded("to_muller: " + std::to_string(a.num_states) +
                            " states exceeds the subset-enumeration bound " +
                            std::to_string(max_states),
                        0);
  OmegaAutomaton out = a;
  Muller table;
  const std::uint64_t limit = std::uint64_t{1} << a.num_states;
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    auto x = StateSet::from_word(mask << 1);
    if (eval_acceptance(a.acceptance, x)) table.table.push_back(std::move(x));
  }
  out.acceptance = std::move(table);
  return out;
}

/// Bitmask conversions for 1-based automaton states (state q ↔ bit q-1).
inline std::uint64_t to_mask(const StateSet& s) { return s.low_word() >> 1; }
inline StateSet from_mask(std::uint64_t m) { return StateSet::from_word(m << 1); }

}  // namespace odet
