#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace odet {

/// Finite set of non-negative integers stored as a dynamic bitset.
///
/// Automaton states are 1-based, so state q occupies bit q. Deterministic
/// automata built by this library use 0-based state indices with the same
/// type.
class StateSet {
 public:
  StateSet() = default;
  StateSet(std::initializer_list<int> elems) {
    for (int e : elems) insert(e);
  }

  template <typename It>
  StateSet(It first, It last) {
    for (; first != last; ++first) insert(*first);
  }

  void insert(int e) {
    auto w = static_cast<std::size_t>(e) / 64;
    if (w >= words_.size()) words_.resize(w + 1, 0);
    words_[w] |= bit(e);
  }

  void erase(int e) {
    auto w = static_cast<std::size_t>(e) / 64;
    if (w < words_.size()) {
      words_[w] &= ~bit(e);
      trim();
    }
  }

  [[nodiscard]] bool contains(int e) const {
    if (e < 0) return false;
    auto w = static_cast<std::size_t>(e) / 64;
    return w < words_.size() && (words_[w] & bit(e)) != 0;
  }

  [[nodiscard]] bool empty() const { return words_.empty(); }

  [[nodiscard]] std::size_t size() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  /// Largest element; the set must be nonempty.
  [[nodiscard]] int max() const {
    auto w = words_.back();
    return static_cast<int>((words_.size() - 1) * 64 + 63 - std::countl_zero(w));
  }

  [[nodiscard]] int min() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return static_cast<int>(i * 64 + std::countr_zero(words_[i]));
    return -1;
  }

  [[nodiscard]] std::vector<int> elements() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      auto w = words_[i];
      while (w) {
        out.push_back(static_cast<int>(i * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
    return out;
  }

  [[nodiscard]] bool intersects(const StateSet& o) const {
    auto k = std::min(words_.size(), o.words_.size());
    for (std::size_t i = 0; i < k; ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  [[nodiscard]] bool subset_of(const StateSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      auto other = i < o.words_.size() ? o.words_[i] : 0;
      if (words_[i] & ~other) return false;
    }
    return true;
  }

  StateSet& operator|=(const StateSet& o) {
    if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
    for (std::size_t i = 0; i < o.words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  StateSet& operator&=(const StateSet& o) {
    if (words_.size() > o.words_.size()) words_.resize(o.words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    trim();
    return *this;
  }

  StateSet& operator-=(const StateSet& o) {
    auto k = std::min(words_.size(), o.words_.size());
    for (std::size_t i = 0; i < k; ++i) words_[i] &= ~o.words_[i];
    trim();
    return *this;
  }

  friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
  friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
  friend StateSet operator-(StateSet a, const StateSet& b) { return a -= b; }

  friend bool operator==(const StateSet&, const StateSet&) = default;
  friend auto operator<=>(const StateSet& a, const StateSet& b) {
    return a.elements() <=> b.elements();
  }

  /// Low 64 bits; callers guarantee all elements are below 64.
  [[nodiscard]] std::uint64_t low_word() const { return words_.empty() ? 0 : words_[0]; }

  static StateSet from_word(std::uint64_t w) {
    StateSet s;
    if (w) s.words_.push_back(w);
    return s;
  }

  /// {lo, lo+1, ..., hi}; empty when hi < lo.
  static StateSet range(int lo, int hi) {
    StateSet s;
    for (int i = lo; i <= hi; ++i) s.insert(i);
    return s;
  }

  [[nodiscard]] std::string to_string(const std::string& prefix = "") const {
    std::string out = "{";
    bool first = true;
    for (int e : elements()) {
      if (!first) out += ",";
      out += prefix + std::to_string(e);
      first = false;
    }
    return out + "}";
  }

 private:
  static std::uint64_t bit(int e) { return std::uint64_t{1} << (static_cast<unsigned>(e) % 64); }
  void trim() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
  }

  std::vector<std::uint64_t> words_;
};

}  // namespace odet
