#pragma once

// Safra-Schwoon determinization of Streett automata into Rabin automata,
// kept as the baseline the CGS construction is measured against.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "odet/automaton.hpp"
#include "odet/deterministic.hpp"
#include "odet/error.hpp"

namespace odet {

/// One node of a (Q,H)-tree. `label` is the state label for leaves and
/// the union of the leaf labels below for inner nodes.
struct QHNode {
  int name = 0;
  int parent = -1;     // position in QHTree::nodes, -1 for the root
  int annotation = 0;  // edge annotation from the parent, 0 for the root
  std::uint64_t label = 0;
  friend bool operator==(const QHNode&, const QHNode&) = default;
};

/// Nodes are stored in preorder with children left to right, so the
/// vector fixes the child order. No nodes means the rejecting sink.
struct QHTree {
  int num_states = 0;
  int num_pairs = 0;
  std::vector<QHNode> nodes;

  [[nodiscard]] bool is_sink() const { return nodes.empty(); }
  [[nodiscard]] int name_bound() const { return 2 * num_states * (num_pairs + 1); }

  [[nodiscard]] std::vector<int> children(int pos) const {
    std::vector<int> out;
    for (int k = pos + 1; k < static_cast<int>(nodes.size()); ++k)
      if (nodes[static_cast<std::size_t>(k)].parent == pos) out.push_back(k);
    return out;
  }
  [[nodiscard]] bool is_leaf(int pos) const {
    auto k = static_cast<std::size_t>(pos) + 1;
    return k >= nodes.size() || nodes[k].parent != pos;
  }
  [[nodiscard]] bool has_name(int name) const {
    return std::any_of(nodes.begin(), nodes.end(), [&](const QHNode& v) { return v.name == name; });
  }
  [[nodiscard]] bool has_leaf_named(int name) const {
    for (std::size_t k = 0; k < nodes.size(); ++k)
      if (nodes[k].name == name) return is_leaf(static_cast<int>(k));
    return false;
  }
  /// W(v): the pair indices not annotated on the path from the root.
  [[nodiscard]] StateSet witness_set(int pos) const {
    StateSet w = StateSet::range(1, num_pairs);
    for (int k = pos; k > 0; k = nodes[static_cast<std::size_t>(k)].parent)
      if (int j = nodes[static_cast<std::size_t>(k)].annotation) w.erase(j);
    return w;
  }

  friend bool operator==(const QHTree&, const QHTree&) = default;
};

namespace detail {

inline void put16(std::string& key, int v) {
  key.push_back(static_cast<char>(v & 0xff));
  key.push_back(static_cast<char>((v >> 8) & 0xff));
}

inline std::string qh_key(const QHTree& t, bool with_names) {
  const auto bytes = static_cast<std::size_t>((t.num_states + 7) / 8);
  std::string key;
  for (const auto& v : t.nodes) {
    if (with_names) put16(key, v.name);
    put16(key, v.parent + 1);
    put16(key, v.annotation);
    for (std::size_t b = 0; b < bytes; ++b) key.push_back(static_cast<char>((v.label >> (8 * b)) & 0xff));
  }
  return key;
}

}  // namespace detail

/// Key that identifies a tree including names and child order.
inline std::string canonical_encoding(const QHTree& t) { return detail::qh_key(t, true); }

/// Key that forgets names; used to count trees the way the state bounds do.
inline std::string unnamed_encoding(const QHTree& t) { return detail::qh_key(t, false); }

inline std::size_t count_unnamed(const std::vector<QHTree>& trees) {
  std::unordered_set<std::string> keys;
  for (const auto& t : trees) keys.insert(unnamed_encoding(t));
  return keys.size();
}

inline const Streett& require_streett(const OmegaAutomaton& a) {
  const auto* s = std::get_if<Streett>(&a.acceptance);
  if (!s) throw InvalidInput("Safra determinization needs a Streett automaton, got " + std::string(kind_name(a.acceptance)));
  if (a.num_states > 63) throw LimitExceeded("Safra determinization supports at most 63 states", 0);
  return *s;
}

inline QHTree safra_initial_tree(const OmegaAutomaton& a) {
  const auto& s = require_streett(a);
  QHTree t;
  t.num_states = a.num_states;
  t.num_pairs = static_cast<int>(s.pairs.size());
  if (!a.initial.empty()) t.nodes.push_back({1, -1, 0, to_mask(a.initial)});
  return t;
}

namespace detail {

class SafraTransition {
 public:
  explicit SafraTransition(const OmegaAutomaton& a) : a_(a) {
    const auto& s = require_streett(a);
    for (const auto& p : s.pairs) {
      e_.push_back(to_mask(p.e));
      f_.push_back(to_mask(p.f));
    }
  }

  QHTree run(const QHTree& t, Symbol sym) {
    QHTree out;
    out.num_states = t.num_states;
    out.num_pairs = t.num_pairs;
    if (t.is_sink()) return out;

    nodes_.clear();
    source_size_ = static_cast<int>(t.nodes.size());
    used_.assign(static_cast<std::size_t>(t.name_bound()) + 1, false);
    for (const auto& v : t.nodes) {
      used_[static_cast<std::size_t>(v.name)] = true;
      nodes_.push_back({v.name, v.parent, {}, v.annotation, 0});
      if (v.parent >= 0) nodes_[static_cast<std::size_t>(v.parent)].children.push_back(
          static_cast<int>(nodes_.size()) - 1);
    }
    // safra initialization: move the leaf labels forward.
    for (std::size_t k = 0; k < t.nodes.size(); ++k)
      if (nodes_[k].children.empty()) nodes_[k].label = image(t.nodes[k].label, sym);
    if (lambda(0) == 0) return out;

    transform(0, StateSet::range(1, t.num_pairs));

    emit(out, 0, -1);
    return out;
  }

 private:
  struct Work {
    int name;
    int parent;
    std::vector<int> children;  // left to right
    int annotation;
    std::uint64_t label;  // meaningful for leaves only
  };

  Work& at(int id) { return nodes_[static_cast<std::size_t>(id)]; }

  [[nodiscard]] std::uint64_t image(std::uint64_t set, Symbol sym) const {
    std::uint64_t out = 0;
    for (; set; set &= set - 1) out |= to_mask(a_.post(std::countr_zero(set) + 1, sym));
    return out;
  }

  std::uint64_t lambda(int id) {
    if (at(id).children.empty()) return at(id).label;
    std::uint64_t out = 0;
    for (int c : at(id).children) out |= lambda(c);
    return out;
  }

  int fresh_name() {
    for (std::size_t k = 1; k < used_.size(); ++k)
      if (!used_[k]) {
        used_[k] = true;
        return static_cast<int>(k);
      }
    throw InternalError("Safra name pool exhausted");
  }

  int create(int parent, std::uint64_t label, int annotation) {
    nodes_.push_back({fresh_name(), parent, {}, annotation, label});
    int id = static_cast<int>(nodes_.size()) - 1;
    at(parent).children.push_back(id);
    return id;
  }

  void strip(int id, std::uint64_t bits) {
    at(id).label &= ~bits;
    for (int c : at(id).children) strip(c, bits);
  }

  /// Returns the names of the nodes below and at `id` that were created in
  /// this step to the pool; names taken from the source tree stay blocked.
  void release(int id) {
    if (id >= source_size_) used_[static_cast<std::size_t>(at(id).name)] = false;
    for (int c : at(id).children) release(c);
  }

  void prune(int id) {
    std::vector<int> keep;
    for (int c : at(id).children) {
      if (lambda(c) == 0) {
        release(c);
        continue;
      }
      prune(c);
      keep.push_back(c);
    }
    at(id).children = std::move(keep);
  }

  void transform(int v, const StateSet& j_set) {
    if (at(v).children.empty()) {
      if (j_set.empty()) return;  // safra1
      const auto label = at(v).label;  // safra2
      at(v).label = 0;
      create(v, label, j_set.max());
    }

    // safra3
    const std::vector<int> kids = at(v).children;
    for (int c : kids) {
      StateSet rest = j_set;
      rest.erase(at(c).annotation);
      transform(c, rest);
    }
    for (int c : kids) {
      const int j = at(c).annotation;
      if (j == 0) continue;
      const auto ej = e_[static_cast<std::size_t>(j - 1)];
      const auto fj = f_[static_cast<std::size_t>(j - 1)];
      for (auto label = lambda(c); label; label &= label - 1) {
        const std::uint64_t qbit = label & -label;
        if (fj & qbit) {
          strip(c, qbit);
          create(v, qbit, j);
        }
        if (ej & qbit) {
          int lower = 0;
          for (int i = j - 1; i >= 1; --i)
            if (j_set.contains(i)) {
              lower = i;
              break;
            }
          create(v, qbit, lower);
        }
      }
    }

    // safra4: the smaller annotation keeps a shared state, then the
    // leftmost child.
    const auto& all = at(v).children;
    std::vector<std::uint64_t> lam;
    std::uint64_t seen = 0, shared = 0;
    for (int c : all) {
      lam.push_back(lambda(c));
      shared |= seen & lam.back();
      seen |= lam.back();
    }
    for (; shared; shared &= shared - 1) {
      const std::uint64_t qbit = shared & -shared;
      std::size_t winner = all.size();
      for (std::size_t i = 0; i < all.size(); ++i)
        if ((lam[i] & qbit) && (winner == all.size() || at(all[i]).annotation < at(all[winner]).annotation))
          winner = i;
      for (std::size_t i = 0; i < all.size(); ++i)
        if (i != winner && (lam[i] & qbit)) strip(all[i], qbit);
    }

    prune(v);  // safra5

    // safra6
    const auto& now = at(v).children;
    if (!now.empty() && std::all_of(now.begin(), now.end(), [&](int c) { return at(c).annotation == 0; })) {
      at(v).label = lambda(v);
      for (int c : now) release(c);
      at(v).children.clear();
    }
  }

  void emit(QHTree& out, int id, int parent_pos) {
    const int pos = static_cast<int>(out.nodes.size());
    out.nodes.push_back({at(id).name, parent_pos, at(id).annotation, lambda(id)});
    for (int c : at(id).children) emit(out, c, pos);
  }

  const OmegaAutomaton& a_;
  std::vector<std::uint64_t> e_, f_;
  std::vector<Work> nodes_;
  std::vector<bool> used_;
  int source_size_ = 0;
};

}  // namespace detail

/// Successor of `t` on `sym`. A fresh name is the smallest name of the pool
/// that is neither in `t` nor held by a node alive at that moment. Names of
/// nodes of `t` are never recycled within the step, so a deleted process
/// cannot hand its name to a new one without the Rabin pair noticing.
inline QHTree safra_next(const QHTree& t, Symbol sym, const OmegaAutomaton& a) {
  if (sym >= a.alphabet_size()) throw InvalidInput("symbol index out of alphabet");
  return detail::SafraTransition(a).run(t, sym);
}

/// Broken (Q,H)-tree properties of `t`; empty when there are none.
inline std::vector<std::string> check_qh_invariants(const QHTree& t) {
  std::vector<std::string> out;
  const int count = static_cast<int>(t.nodes.size());
  std::vector<bool> names(static_cast<std::size_t>(t.name_bound()) + 1, false);
  std::uint64_t leaves_union = 0;
  for (int k = 0; k < count; ++k) {
    const auto& v = t.nodes[static_cast<std::size_t>(k)];
    const std::string id = "node " + std::to_string(v.name);
    if ((k == 0) != (v.parent < 0) || v.parent >= k) out.push_back("structure: bad parent of " + id);
    if (v.name < 1 || v.name > t.name_bound()) {
      out.push_back("names: " + id + " outside the name pool");
    } else if (names[static_cast<std::size_t>(v.name)]) {
      out.push_back("names: duplicate name " + std::to_string(v.name));
    } else {
      names[static_cast<std::size_t>(v.name)] = true;
    }
    if (v.annotation < 0 || v.annotation > t.num_pairs) out.push_back("annotation: " + id + " outside H ∪ {0}");
    if (t.is_leaf(k)) {
      if (v.label == 0) out.push_back("label: leaf " + id + " has an empty label");
      if (leaves_union & v.label) out.push_back("label: leaf " + id + " shares states with another leaf");
      leaves_union |= v.label;
      std::vector<bool> seen(static_cast<std::size_t>(t.num_pairs) + 1, false);
      for (int p = k; p > 0; p = t.nodes[static_cast<std::size_t>(p)].parent) {
        int j = t.nodes[static_cast<std::size_t>(p)].annotation;
        if (j <= 0 || j > t.num_pairs) continue;
        if (seen[static_cast<std::size_t>(j)])
          out.push_back("path: annotation " + std::to_string(j) + " repeats above " + id);
        seen[static_cast<std::size_t>(j)] = true;
      }
    } else {
      std::uint64_t uni = 0;
      bool nonzero = false;
      for (int c : t.children(k)) {
        uni |= t.nodes[static_cast<std::size_t>(c)].label;
        nonzero |= t.nodes[static_cast<std::size_t>(c)].annotation != 0;
      }
      if (!nonzero) out.push_back("children: " + id + " has no child behind a non-zero annotation");
      if (uni != v.label) out.push_back("label: " + id + " label differs from the union below it");
    }
  }
  return out;
}

/// Deterministic Rabin automaton. Pairs range over state indices.
struct Drw {
  std::vector<std::string> alphabet;
  TransitionTable table;
  std::vector<StatePair> pairs;
  /// Source trees when built by the Safra construction.
  std::vector<QHTree> trees;
  std::optional<std::size_t> sink;

  [[nodiscard]] std::size_t size() const { return table.size(); }
};

inline bool drw_accepts_lasso(const Drw& d, const Lasso& l) {
  auto cycle = lasso_cycle(d.table, l);
  StateSet x;
  for (auto s : cycle) x.insert(static_cast<int>(s));
  for (const auto& p : d.pairs)
    if (!x.intersects(p.e) && x.intersects(p.f)) return true;
  return false;
}

struct SafraOptions {
  ExplorationLimits limits = ExplorationLimits::from_env();
  bool check_invariants = false;
};

/// Reachable part of the Safra DRW for a Streett automaton. Pair i - 1
/// belongs to name i: E holds the trees without a node named i and F the
/// trees with a leaf named i.
inline Drw determinize_streett_safra(const OmegaAutomaton& a, const SafraOptions& opts, ExplorationStats& stats) {
  require_valid(a);
  require_streett(a);
  detail::SafraTransition step(a);
  Drw d;
  d.alphabet = a.alphabet;
  auto visit = [&](std::size_t id, const QHTree& t) {
    stats.max_tree_nodes = std::max(stats.max_tree_nodes, t.nodes.size());
    if (opts.check_invariants) {
      auto v = check_qh_invariants(t);
      if (!v.empty()) throw InternalError("(Q,H)-tree invariant broken in state " + std::to_string(id) + ": " + v.front());
    }
  };
  d.table = detail::explore(
      safra_initial_tree(a), a.alphabet_size(), opts.limits, stats, d.trees,
      [&](const QHTree& t, Symbol s) { return step.run(t, s); },
      [](const QHTree& t) { return canonical_encoding(t); }, visit, "safra");
  const int names = d.trees.front().name_bound();
  d.pairs.resize(static_cast<std::size_t>(names));
  for (std::size_t s = 0; s < d.trees.size(); ++s) {
    const auto& t = d.trees[s];
    if (t.is_sink()) d.sink = s;
    std::vector<char> present(static_cast<std::size_t>(names) + 1, 0);
    for (std::size_t k = 0; k < t.nodes.size(); ++k)
      present[static_cast<std::size_t>(t.nodes[k].name)] = t.is_leaf(static_cast<int>(k)) ? 2 : 1;
    for (int i = 1; i <= names; ++i) {
      auto& p = d.pairs[static_cast<std::size_t>(i - 1)];
      if (!present[static_cast<std::size_t>(i)]) p.e.insert(static_cast<int>(s));
      if (present[static_cast<std::size_t>(i)] == 2) p.f.insert(static_cast<int>(s));
    }
  }
  return d;
}

inline Drw determinize_streett_safra(const OmegaAutomaton& a, const SafraOptions& opts = {}) {
  ExplorationStats stats;
  return determinize_streett_safra(a, opts, stats);
}

}  // namespace odet
