#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "odet/automaton.hpp"
#include "odet/error.hpp"

namespace odet {

/// The ultimately periodic word stem · loop^ω.
struct Lasso {
  std::vector<Symbol> stem;
  std::vector<Symbol> loop;

  friend bool operator==(const Lasso&, const Lasso&) = default;
  friend auto operator<=>(const Lasso&, const Lasso&) = default;
};

inline void check_lasso(const Lasso& l, std::size_t alphabet_size) {
  if (l.loop.empty()) throw InvalidInput("lasso loop must be nonempty");
  for (auto s : l.stem)
    if (s >= alphabet_size) throw InvalidInput("lasso stem symbol out of alphabet");
  for (auto s : l.loop)
    if (s >= alphabet_size) throw InvalidInput("lasso loop symbol out of alphabet");
}

inline std::string to_string(const Lasso& l, const std::vector<std::string>& alphabet) {
  auto join = [&](const std::vector<Symbol>& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) out += ",";
      out += alphabet[w[i]];
    }
    return out;
  };
  return "(" + join(l.stem) + ")(" + join(l.loop) + ")^w";
}

/// Visits every lasso with |stem| <= stem_max and 1 <= |loop| <= loop_max in
/// order of (stem length, stem lexicographic, loop length, loop lexicographic).
template <typename F>
void for_each_lasso(std::size_t alphabet_size, std::size_t stem_max, std::size_t loop_max, F&& f) {
  auto for_each_word = [&](std::size_t len, auto&& g) {
    std::vector<Symbol> w(len, 0);
    while (true) {
      g(w);
      std::size_t i = len;
      while (i > 0) {
        --i;
        if (++w[i] < alphabet_size) break;
        w[i] = 0;
        if (i == 0) return;
      }
      if (len == 0) return;
    }
  };
  if (alphabet_size == 0) return;
  Lasso l;
  for (std::size_t s = 0; s <= stem_max; ++s)
    for_each_word(s, [&](const std::vector<Symbol>& stem) {
      l.stem = stem;
      for (std::size_t p = 1; p <= loop_max; ++p)
        for_each_word(p, [&](const std::vector<Symbol>& loop) {
          l.loop = loop;
          f(static_cast<const Lasso&>(l));
        });
    });
}

inline std::size_t lasso_count(std::size_t alphabet_size, std::size_t stem_max, std::size_t loop_max) {
  auto words_up_to = [&](std::size_t lo, std::size_t hi) {
    std::size_t total = 0, pow = 1;
    for (std::size_t k = 0; k <= hi; ++k) {
      if (k >= lo) total += pow;
      pow *= alphabet_size;
    }
    return total;
  };
  return words_up_to(0, stem_max) * words_up_to(1, loop_max);
}

}  // namespace odet
