#pragma once

// Brute-force lasso membership for nondeterministic automata. Used as the
// ground truth every determinization is compared against, so it favours
// obviously-correct enumeration over speed.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <vector>

#include "odet/automaton.hpp"
#include "odet/error.hpp"
#include "odet/lasso.hpp"

namespace odet {

inline constexpr int kDefaultOracleBound = 12;

/// A concrete run prefix · cycle^ω of an automaton on a lasso word.
struct RunWitness {
  std::vector<int> prefix;
  std::vector<int> cycle;
};

namespace detail {

/// Product of the automaton with the loop positions; vertex (q, i) has id
/// (q - 1) * |loop| + i.
class LassoProduct {
 public:
  using Vertex = std::size_t;
  static constexpr Vertex kNone = std::numeric_limits<Vertex>::max();

  LassoProduct(const OmegaAutomaton& a, const Lasso& l, int bound) : a_(a), l_(l) {
    check_lasso(l, a.alphabet_size());
    if (a.num_states > bound)
      throw LimitExceeded("lasso oracle: " + std::to_string(a.num_states) +
                              " states exceeds the brute-force bound " + std::to_string(bound),
                          0);
    if (a.num_states > 62) throw LimitExceeded("lasso oracle: at most 62 states supported", 0);
    len_ = l.loop.size();
    layers_.push_back(a.initial);
    for (auto s : l.stem) layers_.push_back(successors(a, layers_.back(), s));

    const auto n = static_cast<std::size_t>(a.num_states);
    adj_.resize(n * len_);
    for (int q = 1; q <= a.num_states; ++q)
      for (std::size_t i = 0; i < len_; ++i)
        for (int p : a.post(q, l.loop[i]).elements()) adj_[id(q, i)].push_back(id(p, (i + 1) % len_));

    reachable_.assign(adj_.size(), false);
    std::deque<Vertex> queue;
    for (Vertex v : starts()) {
      reachable_[v] = true;
      queue.push_back(v);
    }
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop_front();
      for (Vertex w : adj_[v])
        if (!reachable_[w]) {
          reachable_[w] = true;
          queue.push_back(w);
        }
    }
  }

  [[nodiscard]] Vertex id(int q, std::size_t i) const { return static_cast<Vertex>(q - 1) * len_ + i; }
  [[nodiscard]] int state_of(Vertex v) const { return static_cast<int>(v / len_) + 1; }
  [[nodiscard]] std::uint64_t bit_of(Vertex v) const { return std::uint64_t{1} << (v / len_); }

  [[nodiscard]] std::uint64_t reachable_projection() const {
    std::uint64_t m = 0;
    for (Vertex v = 0; v < reachable_.size(); ++v)
      if (reachable_[v]) m |= bit_of(v);
    return m;
  }

  /// A reachable nontrivial SCC of the product restricted to `mask` whose
  /// projection is exactly `mask` (Tarjan).
  [[nodiscard]] std::optional<std::vector<Vertex>> component_for(std::uint64_t mask) const {
    const std::size_t total = adj_.size();
    std::vector<std::size_t> index(total, kNone), low(total, 0);
    std::vector<bool> on_stack(total, false);
    std::vector<Vertex> stack;
    std::size_t counter = 0;
    std::optional<std::vector<Vertex>> found;
    auto inside = [&](Vertex v) { return (mask & bit_of(v)) != 0; };

    auto strongconnect = [&](auto&& self, Vertex v) -> void {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack[v] = true;
      for (Vertex w : adj_[v]) {
        if (!inside(w)) continue;
        if (index[w] == kNone) {
          self(self, w);
          low[v] = std::min(low[v], low[w]);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      }
      if (low[v] != index[v]) return;
      std::vector<Vertex> comp;
      Vertex w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      if (found || !reachable_[v]) return;
      bool nontrivial = comp.size() > 1 || std::find(adj_[v].begin(), adj_[v].end(), v) != adj_[v].end();
      if (!nontrivial) return;
      std::uint64_t proj = 0;
      for (Vertex u : comp) proj |= bit_of(u);
      if (proj == mask) found = std::move(comp);
    };

    for (Vertex v = 0; v < total && !found; ++v)
      if (inside(v) && reachable_[v] && index[v] == kNone) strongconnect(strongconnect, v);
    return found;
  }

  [[nodiscard]] RunWitness witness(const std::vector<Vertex>& comp) const {
    std::vector<bool> in_comp(adj_.size(), false);
    for (Vertex u : comp) in_comp[u] = true;

    // Product path from a stem endpoint into the component.
    std::vector<Vertex> parent(adj_.size(), kNone);
    std::vector<bool> seen(adj_.size(), false);
    std::deque<Vertex> queue;
    for (Vertex v : starts()) {
      seen[v] = true;
      queue.push_back(v);
    }
    Vertex target = kNone;
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop_front();
      if (in_comp[v]) {
        target = v;
        break;
      }
      for (Vertex w : adj_[v])
        if (!seen[w]) {
          seen[w] = true;
          parent[w] = v;
          queue.push_back(w);
        }
    }
    if (target == kNone) throw InternalError("oracle witness: component unreachable");
    std::vector<Vertex> approach;
    for (Vertex v = target; v != kNone; v = parent[v]) approach.push_back(v);
    std::reverse(approach.begin(), approach.end());

    // Stem run ending in the approach's first state.
    std::vector<int> stem_run(layers_.size());
    stem_run.back() = state_of(approach.front());
    for (std::size_t t = layers_.size() - 1; t > 0; --t)
      for (int p : layers_[t - 1].elements())
        if (a_.post(p, l_.stem[t - 1]).contains(stem_run[t])) {
          stem_run[t - 1] = p;
          break;
        }

    // Shortest path of at least one edge inside the component from `from`
    // to a goal vertex; starts with `from` and ends at the goal.
    auto path_within = [&](Vertex from, auto&& is_goal) {
      std::vector<Vertex> par(adj_.size(), kNone);
      std::deque<Vertex> q;
      auto expand = [&](Vertex v) {
        for (Vertex w : adj_[v])
          if (in_comp[w] && par[w] == kNone) {
            par[w] = v;
            q.push_back(w);
          }
      };
      expand(from);
      while (!q.empty()) {
        Vertex v = q.front();
        q.pop_front();
        if (is_goal(v)) {
          std::vector<Vertex> p{v};
          for (Vertex x = par[v]; x != from; x = par[x]) p.push_back(x);
          p.push_back(from);
          std::reverse(p.begin(), p.end());
          return p;
        }
        expand(v);
      }
      throw InternalError("oracle witness: component is not strongly connected");
    };

    // Closed tour from `target` through every vertex of the component.
    std::vector<bool> visited(adj_.size(), false);
    std::vector<Vertex> tour{target};
    visited[target] = true;
    std::size_t covered = 1;
    while (covered < comp.size()) {
      auto p = path_within(tour.back(), [&](Vertex v) { return !visited[v]; });
      for (std::size_t k = 1; k < p.size(); ++k) {
        tour.push_back(p[k]);
        if (!visited[p[k]]) {
          visited[p[k]] = true;
          ++covered;
        }
      }
    }
    auto back = path_within(tour.back(), [&](Vertex v) { return v == target; });
    tour.insert(tour.end(), back.begin() + 1, back.end() - 1);

    RunWitness w;
    w.prefix.assign(stem_run.begin(), stem_run.end() - 1);
    for (std::size_t k = 0; k + 1 < approach.size(); ++k) w.prefix.push_back(state_of(approach[k]));
    for (Vertex v : tour) w.cycle.push_back(state_of(v));
    return w;
  }

 private:
  [[nodiscard]] std::vector<Vertex> starts() const {
    std::vector<Vertex> out;
    for (int s : layers_.back().elements()) out.push_back(id(s, 0));
    return out;
  }

  const OmegaAutomaton& a_;
  const Lasso& l_;
  std::size_t len_ = 0;
  std::vector<StateSet> layers_;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<bool> reachable_;
};

}  // namespace detail

/// Every set inf(ρ) over the infinite runs ρ of `a` on `l`, in increasing
/// bitmask order.
inline std::vector<StateSet> realizable_infinity_sets(const OmegaAutomaton& a, const Lasso& l,
                                                      int bound = kDefaultOracleBound) {
  detail::LassoProduct prod(a, l, bound);
  const std::uint64_t reach = prod.reachable_projection();
  std::vector<StateSet> out;
  const std::uint64_t limit = std::uint64_t{1} << a.num_states;
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    if (mask & ~reach) continue;
    if (prod.component_for(mask)) out.push_back(from_mask(mask));
  }
  return out;
}

inline bool accepts_lasso(const OmegaAutomaton& a, const Lasso& l, int bound = kDefaultOracleBound) {
  for (const auto& x : realizable_infinity_sets(a, l, bound))
    if (eval_acceptance(a.acceptance, x)) return true;
  return false;
}

/// A run on `l` whose infinity set is exactly `x`, if one exists.
inline std::optional<RunWitness> witness_run(const OmegaAutomaton& a, const Lasso& l, const StateSet& x,
                                             int bound = kDefaultOracleBound) {
  detail::LassoProduct prod(a, l, bound);
  auto comp = prod.component_for(to_mask(x));
  if (!comp) return std::nullopt;
  return prod.witness(*comp);
}

}  // namespace odet
