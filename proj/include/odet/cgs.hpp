#pragma once

// Compact generalized Safra (CGS) trees and their deterministic transition
// function. A CGS tree is one state of the deterministic parity automaton:
// a tree of processes, each tracking the runs in its state label and
// hoping that the states indexed by its hope set are exactly the states
// those runs visit infinitely often.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "odet/automaton.hpp"
#include "odet/error.hpp"

namespace odet {

/// Largest automaton size the tree representation supports.
inline constexpr int kMaxCgsStates = 63;

/// Name budget m = n² + n + 1.
inline constexpr int cgs_name_bound(int n) { return n * n + n + 1; }

/// Node k of a tree has name k + 1. Labels and hope sets are bitmasks:
/// bit i - 1 stands for state q_i / hope index i.
struct CgsNode {
  int parent = 0;  // 0 for the root
  std::uint64_t label = 0;
  std::uint64_t hope = 0;
  friend bool operator==(const CgsNode&, const CgsNode&) = default;
};

struct CgsTree {
  int num_states = 0;
  std::vector<CgsNode> nodes;  // empty: the rejecting sink
  int e = 0;
  int f = 0;

  [[nodiscard]] bool is_sink() const { return nodes.empty(); }
  [[nodiscard]] int m() const { return cgs_name_bound(num_states); }
  [[nodiscard]] int size() const { return static_cast<int>(nodes.size()); }
  [[nodiscard]] const CgsNode& node(int name) const { return nodes[static_cast<std::size_t>(name - 1)]; }
  [[nodiscard]] StateSet label_set(int name) const { return from_mask(node(name).label); }
  [[nodiscard]] StateSet hope_set(int name) const { return from_mask(node(name).hope); }

  /// Edge annotation from the parent: max((h(parent) ∪ {0}) \ h(v)).
  [[nodiscard]] int annotation(int name) const {
    const auto& v = node(name);
    if (v.parent == 0) return 0;
    auto diff = node(v.parent).hope & ~v.hope;
    return diff ? std::bit_width(diff) : 0;
  }

  [[nodiscard]] std::vector<int> children(int name) const {
    std::vector<int> out;
    for (int k = name + 1; k <= size(); ++k)
      if (node(k).parent == name) out.push_back(k);
    return out;
  }

  [[nodiscard]] bool is_leaf(int name) const {
    for (int k = name + 1; k <= size(); ++k)
      if (node(k).parent == name) return false;
    return true;
  }

  friend bool operator==(const CgsTree&, const CgsTree&) = default;
};

inline CgsTree rejecting_sink(int n) {
  CgsTree t;
  t.num_states = n;
  t.e = t.f = cgs_name_bound(n) + 1;
  return t;
}

/// Single root named 1 labelled with the initial states, hope set [n],
/// e = f = m + 1.
inline CgsTree initial_tree(const OmegaAutomaton& a) {
  if (a.num_states > kMaxCgsStates)
    throw LimitExceeded("CGS determinization supports at most " + std::to_string(kMaxCgsStates) + " states", 0);
  CgsTree t;
  t.num_states = a.num_states;
  t.e = t.f = t.m() + 1;
  if (a.initial.empty()) return rejecting_sink(a.num_states);
  t.nodes.push_back({0, to_mask(a.initial), (std::uint64_t{1} << a.num_states) - 1});
  return t;
}

/// The priority of a tree under the min-even parity condition with 2m
/// priorities 0..2m-1.
inline int parity_index(int e, int f, int m) {
  if (e < 2) throw InternalError("CGS tree with e = " + std::to_string(e) + " (must be at least 2)");
  if (e > m && f > m) return 2 * m - 1;
  if (f < e) return f == 1 ? 0 : 2 * f - 2;
  return 2 * e - 3;
}

inline int parity_index(const CgsTree& t) { return parity_index(t.e, t.f, t.m()); }

/// Byte key determined by (name → parent, label, hope) and (e, f).
inline std::string canonical_encoding(const CgsTree& t) {
  const auto mask_bytes = static_cast<std::size_t>((t.num_states + 7) / 8);
  std::string key;
  key.reserve(4 + t.nodes.size() * (1 + 2 * mask_bytes));
  auto put16 = [&](int v) {
    key.push_back(static_cast<char>(v & 0xff));
    key.push_back(static_cast<char>((v >> 8) & 0xff));
  };
  auto put_mask = [&](std::uint64_t m) {
    for (std::size_t b = 0; b < mask_bytes; ++b) key.push_back(static_cast<char>((m >> (8 * b)) & 0xff));
  };
  put16(t.e);
  put16(t.f);
  for (const auto& v : t.nodes) {
    put16(v.parent);
    put_mask(v.label);
    put_mask(v.hope);
  }
  return key;
}

/// Successor images and acceptance verdicts on hope sets, cached per
/// automaton. Not thread safe.
class CgsContext {
 public:
  explicit CgsContext(const OmegaAutomaton& a) : a_(a), n_(a.num_states) {
    if (n_ > kMaxCgsStates)
      throw LimitExceeded("CGS determinization supports at most " + std::to_string(kMaxCgsStates) + " states", 0);
    post_.resize(static_cast<std::size_t>(n_) * a.alphabet_size());
    for (int q = 1; q <= n_; ++q)
      for (Symbol s = 0; s < a.alphabet_size(); ++s) post_[index(q, s)] = to_mask(a.post(q, s));
  }

  [[nodiscard]] const OmegaAutomaton& automaton() const { return a_; }
  [[nodiscard]] int num_states() const { return n_; }
  [[nodiscard]] int m() const { return cgs_name_bound(n_); }

  [[nodiscard]] std::uint64_t image(std::uint64_t set, Symbol s) const {
    std::uint64_t out = 0;
    while (set) {
      int q = std::countr_zero(set) + 1;
      out |= post_[index(q, s)];
      set &= set - 1;
    }
    return out;
  }

  /// P_φ(Q_hope).
  bool accepts_hope(std::uint64_t hope) {
    auto it = verdicts_.find(hope);
    if (it != verdicts_.end()) return it->second;
    bool v = eval_acceptance(a_.acceptance, from_mask(hope));
    verdicts_.emplace(hope, v);
    return v;
  }

 private:
  [[nodiscard]] std::size_t index(int q, Symbol s) const {
    return static_cast<std::size_t>(q - 1) * a_.alphabet_size() + s;
  }

  const OmegaAutomaton& a_;
  int n_;
  std::vector<std::uint64_t> post_;
  std::unordered_map<std::uint64_t, bool> verdicts_;
};

/// Outcome of one transition with the bookkeeping needed to inspect it.
struct CgsStep {
  CgsTree tree;
  /// renamed[k] is the new name of the node named k + 1 in the source
  /// tree, or 0 if it was deleted.
  std::vector<int> renamed;
  /// Names (at deletion time) of every node deleted during the step,
  /// including nodes created and deleted within it.
  std::vector<int> deleted;
  /// Pre-compaction names of nodes reset with an accepting hope set.
  std::vector<int> accepting_resets;
};

namespace detail {

class CgsTransition {
 public:
  explicit CgsTransition(CgsContext& ctx) : ctx_(ctx) {}

  CgsStep run(const CgsTree& t, Symbol sym) {
    const int n = ctx_.num_states();
    const int m = ctx_.m();
    CgsStep step;
    step.renamed.assign(t.nodes.size(), 0);
    if (t.is_sink()) {
      step.tree = rejecting_sink(n);
      return step;
    }

    // Nxt1: load the tree and move every label forward.
    nodes_.clear();
    for (const auto& v : t.nodes) nodes_.push_back({v.parent - 1, {}, ctx_.image(v.label, sym), v.hope, true});
    for (std::size_t k = 1; k < nodes_.size(); ++k)
      nodes_[static_cast<std::size_t>(nodes_[k].parent)].children.push_back(static_cast<int>(k));
    if (nodes_[0].label == 0) {
      for (std::size_t k = 0; k < t.nodes.size(); ++k) step.deleted.push_back(static_cast<int>(k + 1));
      step.tree = rejecting_sink(n);
      return step;
    }
    deleted_.clear();
    resets_.clear();

    // Nxt2
    transform(0);

    // Nxt3: compaction, which ranks the survivors by creation order.
    std::vector<int> new_name(nodes_.size(), 0);
    int next = 0;
    for (std::size_t k = 0; k < nodes_.size(); ++k)
      if (nodes_[k].alive) new_name[k] = ++next;

    CgsTree out;
    out.num_states = n;
    out.nodes.reserve(static_cast<std::size_t>(next));
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
      const auto& w = nodes_[k];
      if (!w.alive) continue;
      out.nodes.push_back({w.parent < 0 ? 0 : new_name[static_cast<std::size_t>(w.parent)], w.label, w.hope});
    }

    out.e = m + 1;
    for (int d : deleted_) out.e = std::min(out.e, d);
    // Nxt4
    out.f = m + 1;
    for (int r : resets_)
      if (nodes_[static_cast<std::size_t>(r)].alive) out.f = std::min(out.f, new_name[static_cast<std::size_t>(r)]);

    for (std::size_t k = 0; k < t.nodes.size(); ++k) step.renamed[k] = new_name[k];
    step.deleted = deleted_;
    for (int r : resets_) step.accepting_resets.push_back(r + 1);
    step.tree = std::move(out);
    return step;
  }

 private:
  struct WorkNode {
    int parent;
    std::vector<int> children;  // ascending by name
    std::uint64_t label;
    std::uint64_t hope;
    bool alive;
  };

  static int annotation(std::uint64_t parent_hope, std::uint64_t child_hope) {
    auto diff = parent_hope & ~child_hope;
    return diff ? std::bit_width(diff) : 0;
  }

  int create(int parent, std::uint64_t label, std::uint64_t hope) {
    nodes_.push_back({parent, {}, label, hope, true});
    int id = static_cast<int>(nodes_.size()) - 1;
    nodes_[static_cast<std::size_t>(parent)].children.push_back(id);
    return id;
  }

  WorkNode& at(int id) { return nodes_[static_cast<std::size_t>(id)]; }

  void strip(int id, std::uint64_t bits) {
    at(id).label &= ~bits;
    for (int c : at(id).children) strip(c, bits);
  }

  void erase_subtree(int id) {
    for (int c : at(id).children) erase_subtree(c);
    at(id).children.clear();
    at(id).alive = false;
    deleted_.push_back(id + 1);
  }

  void erase_children(int id) {
    for (int c : at(id).children) erase_subtree(c);
    at(id).children.clear();
  }

  /// GNR5 on the subtree below `id`.
  void prune(int id) {
    auto& kids = at(id).children;
    std::vector<int> keep;
    for (int c : kids) {
      if (at(c).label == 0) {
        erase_subtree(c);
      } else {
        prune(c);
        keep.push_back(c);
      }
    }
    at(id).children = std::move(keep);
  }

  void transform(int v) {
    // GNR1 / GNR2
    if (at(v).children.empty()) {
      if (at(v).hope == 0) return;
      auto h = at(v).hope;
      create(v, at(v).label, h & ~(std::uint64_t{1} << (std::bit_width(h) - 1)));
    }

    // GNR3: only the children present before this step take part.
    const std::vector<int> kids = at(v).children;
    for (int c : kids) transform(c);
    const std::uint64_t hv = at(v).hope;
    for (int c : kids) {
      const int j = annotation(hv, at(c).hope);
      std::uint64_t label = at(c).label;
      while (label) {
        const int q = std::countr_zero(label) + 1;
        const std::uint64_t qbit = label & -label;
        label &= label - 1;
        if (j >= 1 && q == j) {
          // GNR3a: progress for v on this run; hand it to a fresh child that
          // waits for the next lower hope index (or repeats h(v) at 0).
          auto below = hv & ((std::uint64_t{1} << (j - 1)) - 1);
          auto hope = below ? hv & ~(std::uint64_t{1} << (std::bit_width(below) - 1)) : hv;
          create(v, qbit, hope);
        } else if (!(at(c).hope & qbit)) {
          strip(c, qbit);  // GNR3b
        }
      }
    }

    // GNR4: a state shared by siblings stays with the least annotation,
    // then the least name.
    const std::vector<int>& all = at(v).children;
    std::uint64_t seen = 0, shared = 0;
    for (int c : all) {
      shared |= seen & at(c).label;
      seen |= at(c).label;
    }
    while (shared) {
      const std::uint64_t qbit = shared & -shared;
      shared &= shared - 1;
      int winner = -1, best = 0;
      for (int c : all) {
        if (!(at(c).label & qbit)) continue;
        int ann = annotation(hv, at(c).hope);
        if (winner < 0 || ann < best) {
          winner = c;
          best = ann;
        }
      }
      for (int c : all)
        if (c != winner && (at(c).label & qbit)) strip(c, qbit);
    }

    // GNR5
    prune(v);

    // GNR6
    const auto& now = at(v).children;
    if (!now.empty() && std::all_of(now.begin(), now.end(), [&](int c) { return at(c).hope == hv; })) {
      erase_children(v);
      if (ctx_.accepts_hope(hv)) resets_.push_back(v);
    }
  }

  CgsContext& ctx_;
  std::vector<WorkNode> nodes_;
  std::vector<int> deleted_;
  std::vector<int> resets_;
};

}  // namespace detail

inline CgsStep generalized_next_traced(CgsContext& ctx, const CgsTree& t, Symbol sym) {
  if (sym >= ctx.automaton().alphabet_size()) throw InvalidInput("symbol index out of alphabet");
  return detail::CgsTransition(ctx).run(t, sym);
}

inline CgsTree generalized_next(CgsContext& ctx, const CgsTree& t, Symbol sym) {
  return generalized_next_traced(ctx, t, sym).tree;
}

inline CgsTree generalized_next(const CgsTree& t, Symbol sym, const OmegaAutomaton& a) {
  CgsContext ctx(a);
  return generalized_next(ctx, t, sym);
}

/// Every broken structural property of a reachable CGS tree (empty when
/// none). The rejecting sink has none. The strict-child requirement of
/// the tree definition is checked separately by strict_child_violations.
inline std::vector<std::string> check_cgs_invariants(const CgsTree& t) {
  std::vector<std::string> out;
  if (t.is_sink()) return out;
  const int n = t.num_states;
  const int m = t.m();
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  auto name = [](int k) { return "node " + std::to_string(k); };

  if (t.nodes[0].parent != 0) out.push_back("names: root is not named 1");
  for (int k = 2; k <= t.size(); ++k) {
    int p = t.node(k).parent;
    if (p < 1 || p >= k) out.push_back("names: " + name(k) + " has parent " + std::to_string(p));
  }
  if (!out.empty()) return out;  // later checks assume a well-formed tree

  if (t.nodes[0].hope != full) out.push_back("root hope: root hope set is not [n]");

  int leaves = 0;
  for (int k = 1; k <= t.size(); ++k) {
    const auto& v = t.node(k);
    const auto kids = t.children(k);
    if (v.label == 0) out.push_back("label: " + name(k) + " has an empty label");
    if (v.label & ~v.hope) out.push_back("label-hope: label of " + name(k) + " not within Q_h");
    if (kids.empty()) {
      ++leaves;
      continue;
    }
    if (v.hope == 0) out.push_back("nonleaf-hope: non-leaf " + name(k) + " has empty hope set");
    std::uint64_t uni = 0;
    for (int c : kids) {
      const auto& w = t.node(c);
      if (uni & w.label) out.push_back("siblings: children of " + name(k) + " share states");
      uni |= w.label;
      if (w.hope & ~v.hope) out.push_back("hope: " + name(c) + " hope not within its parent's");
      if (std::popcount(v.hope & ~w.hope) > 1) out.push_back("hope: " + name(c) + " differs from parent by >1");
    }
    if (uni != v.label) out.push_back("label-union: label of " + name(k) + " differs from its children's union");
  }

  if (t.size() > m) out.push_back("bounds: " + std::to_string(t.size()) + " nodes exceed m");
  if (leaves > n) out.push_back("bounds: " + std::to_string(leaves) + " leaves exceed n");
  // Height after collapsing 0-annotated edges.
  std::vector<int> height(static_cast<std::size_t>(t.size()) + 1, 0);
  int max_height = 0;
  for (int k = 2; k <= t.size(); ++k) {
    height[static_cast<std::size_t>(k)] =
        height[static_cast<std::size_t>(t.node(k).parent)] + (t.annotation(k) != 0 ? 1 : 0);
    max_height = std::max(max_height, height[static_cast<std::size_t>(k)]);
  }
  if (max_height > n) out.push_back("bounds: collapsed height exceeds n");

  if (t.e <= 1) out.push_back("e: e = " + std::to_string(t.e));
  if (t.e > m + 1 || t.f < 1 || t.f > m + 1) out.push_back("e/f: out of range");
  if (t.f <= m) {
    if (t.f > t.size() || !t.is_leaf(t.f) || t.node(t.f).hope == 0)
      out.push_back("f: no leaf named f = " + std::to_string(t.f) + " with a nonempty hope set");
  }
  return out;
}

/// Non-leaf nodes none of whose children has a smaller hope set. GNR4 at an
/// ancestor can strip the last such child after the node's own GNR6 check,
/// so reachable trees may contain these.
inline std::vector<int> strict_child_violations(const CgsTree& t) {
  std::vector<int> out;
  for (int k = 1; k <= t.size(); ++k) {
    const auto kids = t.children(k);
    if (kids.empty()) continue;
    if (std::all_of(kids.begin(), kids.end(), [&](int c) { return t.node(c).hope == t.node(k).hope; }))
      out.push_back(k);
  }
  return out;
}

}  // namespace odet
