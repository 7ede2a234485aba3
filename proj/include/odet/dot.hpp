#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "odet/dpw.hpp"
#include "odet/safra.hpp"

namespace odet {

/// "{1..5}" style rendering: runs of three or more consecutive elements
/// collapse to lo..hi.
inline std::string compressed_set(const StateSet& s, const std::string& prefix = "") {
  auto e = s.elements();
  std::string out = "{";
  for (std::size_t i = 0; i < e.size();) {
    std::size_t j = i;
    while (j + 1 < e.size() && e[j + 1] == e[j] + 1) ++j;
    if (i) out += ",";
    if (j - i >= 2) {
      out += prefix + std::to_string(e[i]) + ".." + prefix + std::to_string(e[j]);
    } else {
      out += prefix + std::to_string(e[i]);
      if (j > i) out += "," + prefix + std::to_string(e[j]);
    }
    i = j + 1;
  }
  return out + "}";
}

inline std::string emit_dot(const CgsTree& t) {
  std::ostringstream os;
  os << "digraph cgs {\n  node [shape=box];\n";
  os << "  label=\"e=" << t.e << " f=" << t.f << " priority=" << parity_index(t) << "\";\n";
  if (t.is_sink()) os << "  sink [label=\"sink\"];\n";
  for (int k = 1; k <= t.size(); ++k)
    os << "  n" << k << " [label=\"" << k << " | " << t.label_set(k).to_string("q") << " | "
       << compressed_set(t.hope_set(k)) << "\"];\n";
  for (int k = 2; k <= t.size(); ++k)
    os << "  n" << t.node(k).parent << " -> n" << k << " [label=\"" << t.annotation(k) << "\"];\n";
  os << "}\n";
  return os.str();
}

inline std::string emit_dot(const QHTree& t) {
  std::ostringstream os;
  os << "digraph qh {\n  node [shape=box];\n";
  if (t.is_sink()) os << "  sink [label=\"sink\"];\n";
  for (const auto& v : t.nodes)
    os << "  n" << v.name << " [label=\"" << v.name << " | " << from_mask(v.label).to_string("q") << "\"];\n";
  for (const auto& v : t.nodes)
    if (v.parent >= 0)
      os << "  n" << t.nodes[static_cast<std::size_t>(v.parent)].name << " -> n" << v.name << " [label=\""
         << v.annotation << "\"];\n";
  os << "}\n";
  return os.str();
}

namespace detail {

/// Edges of a transition table with the symbols of parallel edges merged.
inline void dot_edges(std::ostream& os, const TransitionTable& t, const std::vector<std::string>& alphabet) {
  os << "  init [shape=point];\n  init -> s" << t.initial << ";\n";
  for (std::size_t s = 0; s < t.size(); ++s) {
    std::map<std::size_t, std::string> merged;
    for (Symbol a = 0; a < t.num_symbols; ++a) {
      auto& lbl = merged[t(s, a)];
      lbl += (lbl.empty() ? "" : ",") + alphabet[a];
    }
    for (const auto& [d, lbl] : merged) os << "  s" << s << " -> s" << d << " [label=\"" << lbl << "\"];\n";
  }
}

}  // namespace detail

/// One node per state, labelled with its index and priority.
inline std::string emit_dot(const Dpw& d) {
  std::ostringstream os;
  os << "digraph dpw {\n  node [shape=circle];\n";
  for (std::size_t s = 0; s < d.size(); ++s)
    os << "  s" << s << " [label=\"" << s << "\\np" << d.priority[s] << "\"];\n";
  detail::dot_edges(os, d.table, d.alphabet);
  os << "}\n";
  return os.str();
}

inline std::string emit_dot(const Drw& d) {
  std::ostringstream os;
  os << "digraph drw {\n  node [shape=circle];\n";
  for (std::size_t s = 0; s < d.size(); ++s) os << "  s" << s << " [label=\"" << s << "\"];\n";
  detail::dot_edges(os, d.table, d.alphabet);
  os << "}\n";
  return os.str();
}

}  // namespace odet
