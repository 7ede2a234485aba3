#pragma once

#include <optional>
#include <string>
#include <vector>

#include "odet/automaton.hpp"
#include "odet/cgs.hpp"
#include "odet/deterministic.hpp"

namespace odet {

/// Deterministic parity automaton; a run is accepting iff the least
/// priority it sees infinitely often is even.
struct Dpw {
  std::vector<std::string> alphabet;
  int m = 0;  // priorities are 0..2m-1
  TransitionTable table;
  std::vector<int> priority;
  /// Source CGS tree per state; empty when the DPW was not built by
  /// `determinize`.
  std::vector<CgsTree> trees;
  std::optional<std::size_t> sink;

  [[nodiscard]] std::size_t size() const { return priority.size(); }
};

struct DeterminizeOptions {
  ExplorationLimits limits = ExplorationLimits::from_env();
  /// Check every reachable tree against check_cgs_invariants and throw
  /// InternalError on the first violation.
  bool check_invariants = false;
};

/// Reachable part of the CGS-tree parity automaton equivalent to `a`.
inline Dpw determinize(const OmegaAutomaton& a, const DeterminizeOptions& opts, ExplorationStats& stats) {
  require_valid(a);
  CgsContext ctx(a);
  Dpw d;
  d.alphabet = a.alphabet;
  d.m = ctx.m();
  auto visit = [&](std::size_t id, const CgsTree& t) {
    stats.max_tree_nodes = std::max(stats.max_tree_nodes, t.nodes.size());
    if (opts.check_invariants) {
      auto v = check_cgs_invariants(t);
      if (!v.empty()) throw InternalError("CGS invariant broken in state " + std::to_string(id) + ": " + v.front());
    }
  };
  d.table = detail::explore(
      initial_tree(a), a.alphabet_size(), opts.limits, stats, d.trees,
      [&](const CgsTree& t, Symbol s) { return generalized_next(ctx, t, s); },
      [](const CgsTree& t) { return canonical_encoding(t); }, visit, "determinize");
  d.priority.reserve(d.trees.size());
  for (std::size_t s = 0; s < d.trees.size(); ++s) {
    d.priority.push_back(parity_index(d.trees[s]));
    if (d.trees[s].is_sink()) d.sink = s;
  }
  return d;
}

inline Dpw determinize(const OmegaAutomaton& a, const DeterminizeOptions& opts = {}) {
  ExplorationStats stats;
  return determinize(a, opts, stats);
}

inline bool dpw_accepts_lasso(const Dpw& d, const Lasso& l) {
  int least = -1;
  for (auto s : lasso_cycle(d.table, l))
    if (least < 0 || d.priority[s] < least) least = d.priority[s];
  return least >= 0 && least % 2 == 0;
}

}  // namespace odet
