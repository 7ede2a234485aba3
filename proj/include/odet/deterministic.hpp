#pragma once

#include <chrono>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <unordered_map>
#include <vector>

#include "odet/automaton.hpp"
#include "odet/lasso.hpp"

namespace odet {

/// Total deterministic transition function over states 0..size()-1.
struct TransitionTable {
  std::size_t num_symbols = 0;
  std::size_t initial = 0;
  std::vector<std::size_t> next;  // next[state * num_symbols + symbol]

  [[nodiscard]] std::size_t size() const { return num_symbols ? next.size() / num_symbols : 0; }
  [[nodiscard]] std::size_t operator()(std::size_t state, Symbol a) const { return next[state * num_symbols + a]; }
  friend bool operator==(const TransitionTable&, const TransitionTable&) = default;
};

/// States the unique run on `l` visits infinitely often, in order of first
/// visit within the cycle.
inline std::vector<std::size_t> lasso_cycle(const TransitionTable& t, const Lasso& l) {
  check_lasso(l, t.num_symbols);
  std::size_t s = t.initial;
  for (auto a : l.stem) s = t(s, a);
  const std::size_t len = l.loop.size();
  std::unordered_map<std::size_t, std::size_t> first_seen;  // state * len + phase -> time
  std::vector<std::size_t> trace;
  for (std::size_t time = 0;; ++time) {
    const std::size_t phase = time % len;
    auto [it, fresh] = first_seen.emplace(s * len + phase, time);
    if (!fresh) return {trace.begin() + static_cast<std::ptrdiff_t>(it->second), trace.end()};
    trace.push_back(s);
    s = t(s, l.loop[phase]);
  }
}

/// Bounds on an explicit state-space construction. Zero disables a bound.
struct ExplorationLimits {
  std::size_t max_states = 0;
  double max_seconds = 0;

  /// max_states from ODET_MAX_STATES when set, otherwise `fallback`.
  static ExplorationLimits from_env(std::size_t fallback = 2'000'000) {
    ExplorationLimits l;
    l.max_states = fallback;
    if (const char* env = std::getenv("ODET_MAX_STATES")) {
      try {
        l.max_states = std::stoull(env);
      } catch (const std::exception&) {
        throw InvalidInput(std::string("ODET_MAX_STATES is not a number: ") + env);
      }
    }
    return l;
  }
};

struct ExplorationStats {
  std::size_t states = 0;
  std::size_t transitions = 0;
  std::size_t max_tree_nodes = 0;
  double seconds = 0;
  bool complete = true;
};

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

/// Breadth-first closure of `initial` under `step`, deduplicating by `key`.
/// `visit(index, state)` runs once per discovered state.
template <typename State, typename Step, typename Key, typename Visit>
TransitionTable explore(const State& initial, std::size_t num_symbols, const ExplorationLimits& limits,
                        ExplorationStats& stats, std::vector<State>& states, Step&& step, Key&& key,
                        Visit&& visit, const char* what) {
  Stopwatch clock;
  TransitionTable table;
  table.num_symbols = num_symbols;
  std::unordered_map<std::string, std::size_t> index;
  states.clear();
  auto intern = [&](State s) {
    auto k = key(s);
    auto [it, fresh] = index.emplace(std::move(k), states.size());
    if (fresh) {
      if (limits.max_states && states.size() >= limits.max_states) {
        stats.states = states.size();
        stats.complete = false;
        stats.seconds = clock.seconds();
        throw LimitExceeded(std::string(what) + ": state limit " + std::to_string(limits.max_states) +
                                " reached after " + std::to_string(states.size()) + " states",
                            states.size());
      }
      visit(states.size(), s);
      states.push_back(std::move(s));
    }
    return it->second;
  };
  table.initial = intern(initial);
  for (std::size_t cur = 0; cur < states.size(); ++cur) {
    if (limits.max_seconds > 0 && clock.seconds() > limits.max_seconds) {
      stats.states = states.size();
      stats.complete = false;
      stats.seconds = clock.seconds();
      throw LimitExceeded(std::string(what) + ": time limit reached after " + std::to_string(states.size()) +
                              " states",
                          states.size());
    }
    for (Symbol a = 0; a < num_symbols; ++a) {
      State succ = step(states[cur], a);
      std::size_t id = intern(std::move(succ));
      table.next.push_back(id);
    }
  }
  stats.states = states.size();
  stats.transitions = table.next.size();
  stats.seconds = clock.seconds();
  return table;
}

}  // namespace detail

}  // namespace odet
