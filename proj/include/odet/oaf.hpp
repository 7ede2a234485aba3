#pragma once

// Reader and canonical printer for the line-oriented OAF automaton format:
//
//   oaf 1
//   alphabet a b
//   states 2
//   initial 1
//   acceptance buchi 2          # or muller/rabin/streett/parity/el
//   trans 1 a 1 2
//
// Set-valued acceptance payloads are brace groups such as `{ 1 2 }`.

#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "odet/automaton.hpp"

namespace odet {

class OafError : public InvalidInput {
 public:
  enum class Kind { Syntax, Validation };

  OafError(Kind kind, int line, int column, const std::string& msg)
      : InvalidInput(format(kind, line, column, msg)), kind_(kind), line_(line), column_(column) {}

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return column_; }

 private:
  static std::string format(Kind kind, int line, int column, const std::string& msg) {
    std::string where = line > 0 ? std::to_string(line) + ":" + std::to_string(column) + ": " : "";
    return where + (kind == Kind::Syntax ? "syntax error: " : "invalid automaton: ") + msg;
  }

  Kind kind_;
  int line_;
  int column_;
};

namespace detail {

struct OafToken {
  std::string text;
  int line;
  int column;
};

class OafReader {
 public:
  explicit OafReader(std::string_view text) : text_(text) {}

  OmegaAutomaton parse() {
    std::vector<std::vector<OafToken>> lines = split_lines();
    std::size_t k = 0;
    if (lines.empty()) throw OafError(OafError::Kind::Syntax, 1, 1, "empty document, expected 'oaf 1'");
    {
      const auto& hdr = lines[k++];
      if (hdr[0].text != "oaf") syntax(hdr[0], "expected header 'oaf 1'");
      if (hdr.size() != 2 || hdr[1].text != "1") syntax(hdr.size() > 1 ? hdr[1] : hdr[0], "unsupported format version");
    }

    std::optional<std::vector<OafToken>> alphabet, states, initial, acceptance;
    std::vector<std::vector<OafToken>> trans;
    for (; k < lines.size(); ++k) {
      const auto& ln = lines[k];
      const auto& kw = ln[0].text;
      auto once = [&](std::optional<std::vector<OafToken>>& slot, const char* what) {
        if (slot) invalid(ln[0], std::string("multiple ") + what);
        slot = ln;
      };
      if (kw == "alphabet") once(alphabet, "alphabet");
      else if (kw == "states") once(states, "states");
      else if (kw == "initial") once(initial, "initial");
      else if (kw == "acceptance") once(acceptance, "acceptance");
      else if (kw == "trans") trans.push_back(ln);
      else syntax(ln[0], "unknown section '" + kw + "'");
    }
    const OafToken eof{"", static_cast<int>(line_count_) + 1, 1};
    if (!alphabet) invalid(eof, "missing alphabet");
    if (!states) invalid(eof, "missing states");
    if (!initial) invalid(eof, "missing initial");
    if (!acceptance) invalid(eof, "missing acceptance");

    std::vector<std::string> sigma;
    for (std::size_t i = 1; i < alphabet->size(); ++i) {
      const auto& t = (*alphabet)[i];
      if (!is_ident(t.text)) syntax(t, "bad symbol '" + t.text + "'");
      for (const auto& s : sigma)
        if (s == t.text) invalid(t, "duplicate symbol '" + t.text + "'");
      sigma.push_back(t.text);
    }
    if (sigma.empty()) invalid((*alphabet)[0], "alphabet is empty");

    if (states->size() != 2) syntax((*states)[0], "expected 'states <n>'");
    n_ = integer((*states)[1]);
    if (n_ < 1) invalid((*states)[1], "automaton needs at least one state");

    OmegaAutomaton a(n_, sigma);
    for (std::size_t i = 1; i < initial->size(); ++i) a.initial.insert(state((*initial)[i]));
    if (a.initial.empty()) invalid((*initial)[0], "no initial state");

    a.acceptance = parse_acceptance(*acceptance);

    std::map<std::pair<int, Symbol>, bool> seen;
    for (const auto& ln : trans) {
      if (ln.size() < 4) syntax(ln[0], "expected 'trans <src> <sym> <dst>+'");
      const int src = state(ln[1]);
      auto sym = a.symbol_index(ln[2].text);
      if (!sym) invalid(ln[2], "symbol '" + ln[2].text + "' is not in the alphabet");
      if (!seen.emplace(std::pair{src, *sym}, true).second)
        invalid(ln[0], "duplicate transition for state " + std::to_string(src) + " on '" + ln[2].text + "'");
      for (std::size_t i = 3; i < ln.size(); ++i) a.add_transition(src, *sym, state(ln[i]));
    }

    auto violations = validate(a);
    if (!violations.empty()) invalid(*acceptance->begin(), violations.front().field + ": " + violations.front().message);
    return a;
  }

 private:
  [[noreturn]] static void syntax(const OafToken& t, const std::string& msg) {
    throw OafError(OafError::Kind::Syntax, t.line, t.column, msg);
  }
  [[noreturn]] static void invalid(const OafToken& t, const std::string& msg) {
    throw OafError(OafError::Kind::Validation, t.line, t.column, msg);
  }

  static bool is_ident(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
  }

  static int integer(const OafToken& t) {
    int v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || p != t.text.data() + t.text.size()) syntax(t, "expected a number, got '" + t.text + "'");
    return v;
  }

  [[nodiscard]] int state(const OafToken& t) const {
    int q = integer(t);
    if (q < 1 || q > n_) invalid(t, "state " + std::to_string(q) + " out of range 1.." + std::to_string(n_));
    return q;
  }

  /// Brace groups from position `i` to the end of the line.
  std::vector<StateSet> groups(const std::vector<OafToken>& ln, std::size_t i) const {
    std::vector<StateSet> out;
    while (i < ln.size()) {
      if (ln[i].text != "{") syntax(ln[i], "expected '{'");
      StateSet s;
      for (++i; i < ln.size() && ln[i].text != "}"; ++i) s.insert(state(ln[i]));
      if (i == ln.size()) syntax(ln.back(), "unclosed '{'");
      ++i;
      out.push_back(std::move(s));
    }
    return out;
  }

  AcceptanceCondition parse_acceptance(const std::vector<OafToken>& ln) {
    if (ln.size() < 2) syntax(ln[0], "expected an acceptance kind");
    const auto& kind = ln[1].text;
    if (kind == "buchi") {
      Buchi b;
      for (std::size_t i = 2; i < ln.size(); ++i) b.accepting.insert(state(ln[i]));
      return b;
    }
    if (kind == "muller") {
      auto g = groups(ln, 2);
      for (std::size_t i = 0; i < g.size(); ++i)
        if (g[i].empty()) invalid(ln[1], "Muller set " + std::to_string(i + 1) + " is empty");
      return Muller{std::move(g)};
    }
    if (kind == "rabin" || kind == "streett") {
      auto g = groups(ln, 2);
      if (g.empty()) invalid(ln[1], kind + " needs at least one pair");
      if (g.size() % 2) syntax(ln.back(), kind + " sets must come in E F pairs");
      std::vector<StatePair> pairs;
      for (std::size_t i = 0; i < g.size(); i += 2) pairs.push_back({std::move(g[i]), std::move(g[i + 1])});
      if (kind == "rabin") return Rabin{std::move(pairs)};
      return Streett{std::move(pairs)};
    }
    if (kind == "parity") {
      auto g = groups(ln, 2);
      if (g.empty()) invalid(ln[1], "parity needs at least one set");
      return Parity{std::move(g)};
    }
    if (kind == "el") {
      if (ln.size() < 3) syntax(ln[1], "expected a formula");
      pos_ = 2;
      line_ = &ln;
      auto f = el_or();
      if (pos_ != ln.size()) syntax(ln[pos_], "unexpected '" + ln[pos_].text + "' in formula");
      return EmersonLei{std::move(f)};
    }
    syntax(ln[1], "unknown acceptance kind '" + kind + "'");
  }

  // Formula grammar: or := and ('|' and)*, and := unary ('&' unary)*,
  // unary := '!' unary | '(' or ')' | Inf '(' i ')' | Fin '(' i ')'.
  const OafToken& peek() const {
    if (pos_ >= line_->size()) syntax(line_->back(), "formula ends early");
    return (*line_)[pos_];
  }
  void expect(const char* s) {
    if (peek().text != s) syntax(peek(), std::string("expected '") + s + "'");
    ++pos_;
  }
  ElFormula el_or() {
    auto f = el_and();
    while (pos_ < line_->size() && peek().text == "|") {
      ++pos_;
      f = ElFormula::disj(std::move(f), el_and());
    }
    return f;
  }
  ElFormula el_and() {
    auto f = el_unary();
    while (pos_ < line_->size() && peek().text == "&") {
      ++pos_;
      f = ElFormula::conj(std::move(f), el_unary());
    }
    return f;
  }
  ElFormula el_unary() {
    const auto& t = peek();
    if (t.text == "!") {
      ++pos_;
      return ElFormula::negate(el_unary());
    }
    if (t.text == "(") {
      ++pos_;
      auto f = el_or();
      expect(")");
      return f;
    }
    if (t.text == "Inf" || t.text == "Fin") {
      ++pos_;
      expect("(");
      int q = state(peek());
      ++pos_;
      expect(")");
      return t.text == "Inf" ? ElFormula::inf(q) : ElFormula::fin(q);
    }
    syntax(t, "unexpected '" + t.text + "' in formula");
  }

  /// Tokens per nonblank line; braces, parentheses and the formula
  /// operators are tokens of their own even without surrounding spaces.
  std::vector<std::vector<OafToken>> split_lines() {
    std::vector<std::vector<OafToken>> out;
    int line = 1;
    std::size_t i = 0;
    std::vector<OafToken> cur;
    int col = 1;
    auto flush_line = [&] {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    };
    while (i < text_.size()) {
      char c = text_[i];
      if (c == '\n') {
        flush_line();
        ++line;
        col = 1;
        ++i;
        continue;
      }
      if (c == '#') {
        while (i < text_.size() && text_[i] != '\n') ++i;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        ++col;
        continue;
      }
      if (std::string_view("{}()&|!").find(c) != std::string_view::npos) {
        cur.push_back({std::string(1, c), line, col});
        ++i;
        ++col;
        continue;
      }
      const int start = col;
      std::string word;
      while (i < text_.size() && !std::isspace(static_cast<unsigned char>(text_[i])) &&
             std::string_view("{}()&|!#").find(text_[i]) == std::string_view::npos) {
        word.push_back(text_[i++]);
        ++col;
      }
      cur.push_back({std::move(word), line, start});
    }
    flush_line();
    line_count_ = static_cast<std::size_t>(line);
    return out;
  }

  std::string_view text_;
  std::size_t line_count_ = 0;
  int n_ = 0;
  std::size_t pos_ = 0;
  const std::vector<OafToken>* line_ = nullptr;
};

}  // namespace detail

inline OmegaAutomaton parse_oaf(std::string_view text) { return detail::OafReader(text).parse(); }

/// Canonical text: fixed section order, ascending indices, single spaces.
inline std::string print_oaf(const OmegaAutomaton& a) {
  std::ostringstream os;
  auto set = [&](const StateSet& s) {
    os << " {";
    for (int q : s.elements()) os << ' ' << q;
    os << " }";
  };
  os << "oaf 1\nalphabet";
  for (const auto& s : a.alphabet) os << ' ' << s;
  os << "\nstates " << a.num_states << "\ninitial";
  for (int q : a.initial.elements()) os << ' ' << q;
  os << "\nacceptance " << kind_name(a.acceptance);
  std::visit(Overloaded{
                 [&](const Buchi& c) {
                   for (int q : c.accepting.elements()) os << ' ' << q;
                 },
                 [&](const Muller& c) {
                   for (const auto& s : c.table) set(s);
                 },
                 [&](const Rabin& c) {
                   for (const auto& p : c.pairs) set(p.e), set(p.f);
                 },
                 [&](const Streett& c) {
                   for (const auto& p : c.pairs) set(p.e), set(p.f);
                 },
                 [&](const Parity& c) {
                   for (const auto& s : c.sets) set(s);
                 },
                 [&](const EmersonLei& c) { os << ' ' << c.formula.to_string(); },
             },
             a.acceptance);
  os << '\n';
  for (int q = 1; q <= a.num_states; ++q)
    for (Symbol s = 0; s < a.alphabet_size(); ++s) {
      const auto& next = a.post(q, s);
      if (next.empty()) continue;
      os << "trans " << q << ' ' << a.alphabet[s];
      for (int r : next.elements()) os << ' ' << r;
      os << '\n';
    }
  return os.str();
}

}  // namespace odet
