#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "odet/state_set.hpp"

namespace odet {

/// Boolean formula over Inf(q) / Fin(q) atoms on state indices.
struct ElFormula {
  enum class Op { Inf, Fin, And, Or, Not };

  Op op = Op::Inf;
  int state = 0;  // atoms only
  std::vector<ElFormula> args;

  static ElFormula inf(int q) { return {Op::Inf, q, {}}; }
  static ElFormula fin(int q) { return {Op::Fin, q, {}}; }
  static ElFormula conj(ElFormula a, ElFormula b) { return {Op::And, 0, {std::move(a), std::move(b)}}; }
  static ElFormula disj(ElFormula a, ElFormula b) { return {Op::Or, 0, {std::move(a), std::move(b)}}; }
  static ElFormula negate(ElFormula a) { return {Op::Not, 0, {std::move(a)}}; }

  [[nodiscard]] bool is_atom() const { return op == Op::Inf || op == Op::Fin; }

  [[nodiscard]] bool eval(const StateSet& inf_set) const {
    switch (op) {
      case Op::Inf: return inf_set.contains(state);
      case Op::Fin: return !inf_set.contains(state);
      case Op::And: return args[0].eval(inf_set) && args[1].eval(inf_set);
      case Op::Or: return args[0].eval(inf_set) || args[1].eval(inf_set);
      case Op::Not: return !args[0].eval(inf_set);
    }
    return false;
  }

  template <typename F>
  void for_each_atom(F&& f) const {
    if (is_atom()) {
      f(state);
      return;
    }
    for (const auto& a : args) a.for_each_atom(f);
  }

  /// Prints with minimal parentheses; binary operators associate to the left.
  [[nodiscard]] std::string to_string() const {
    switch (op) {
      case Op::Inf: return "Inf(" + std::to_string(state) + ")";
      case Op::Fin: return "Fin(" + std::to_string(state) + ")";
      case Op::Not: {
        const auto& a = args[0];
        bool wrap = a.op == Op::And || a.op == Op::Or;
        return "!" + (wrap ? "(" + a.to_string() + ")" : a.to_string());
      }
      case Op::And:
      case Op::Or: {
        const char* sym = op == Op::And ? " & " : " | ";
        auto side = [&](const ElFormula& a, bool right) {
          bool wrap = precedence(a.op) < precedence(op) || (right && precedence(a.op) == precedence(op));
          return wrap ? "(" + a.to_string() + ")" : a.to_string();
        };
        return side(args[0], false) + sym + side(args[1], true);
      }
    }
    return {};
  }

  friend bool operator==(const ElFormula&, const ElFormula&) = default;

 private:
  static int precedence(Op o) {
    switch (o) {
      case Op::Or: return 1;
      case Op::And: return 2;
      default: return 3;
    }
  }
};

struct Buchi {
  StateSet accepting;
  friend bool operator==(const Buchi&, const Buchi&) = default;
};

struct Muller {
  std::vector<StateSet> table;
  friend bool operator==(const Muller&, const Muller&) = default;
};

struct StatePair {
  StateSet e;
  StateSet f;
  friend bool operator==(const StatePair&, const StatePair&) = default;
};

struct Rabin {
  std::vector<StatePair> pairs;
  friend bool operator==(const Rabin&, const Rabin&) = default;
};

/// Pair index i (1-based) corresponds to pairs[i - 1].
struct Streett {
  std::vector<StatePair> pairs;
  friend bool operator==(const Streett&, const Streett&) = default;
};

/// Priority j is sets[j]; sets may overlap.
struct Parity {
  std::vector<StateSet> sets;
  friend bool operator==(const Parity&, const Parity&) = default;
};

struct EmersonLei {
  ElFormula formula;
  friend bool operator==(const EmersonLei&, const EmersonLei&) = default;
};

using AcceptanceCondition = std::variant<Buchi, Muller, Rabin, Streett, Parity, EmersonLei>;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

/// Evaluates the infinity-set predicate of `cond` on `x`.
inline bool eval_acceptance(const AcceptanceCondition& cond, const StateSet& x) {
  return std::visit(
      Overloaded{
          [&](const Buchi& c) { return x.intersects(c.accepting); },
          [&](const Muller& c) {
            for (const auto& s : c.table)
              if (s == x) return true;
            return false;
          },
          [&](const Rabin& c) {
            for (const auto& p : c.pairs)
              if (!x.intersects(p.e) && x.intersects(p.f)) return true;
            return false;
          },
          [&](const Streett& c) {
            for (const auto& p : c.pairs)
              if (x.intersects(p.f) && !x.intersects(p.e)) return false;
            return true;
          },
          [&](const Parity& c) {
            for (std::size_t j = 0; j < c.sets.size(); ++j)
              if (x.intersects(c.sets[j])) return j % 2 == 0;
            return false;
          },
          [&](const EmersonLei& c) { return c.formula.eval(x); },
      },
      cond);
}

inline const char* kind_name(const AcceptanceCondition& cond) {
  return std::visit(Overloaded{
                        [](const Buchi&) { return "buchi"; },
                        [](const Muller&) { return "muller"; },
                        [](const Rabin&) { return "rabin"; },
                        [](const Streett&) { return "streett"; },
                        [](const Parity&) { return "parity"; },
                        [](const EmersonLei&) { return "el"; },
                    },
                    cond);
}

}  // namespace odet
