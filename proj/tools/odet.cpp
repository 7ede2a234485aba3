// odet: determinize ω-automata, compare them on lasso words, and emit the
// hard Streett family.
//
// Exit codes: 0 success, 1 usage, 2 parse or validation error, 3 limit
// exceeded, 4 equivalence disagreement.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "odet/odet.hpp"

namespace {

using namespace odet;

enum Exit { kOk = 0, kUsage = 1, kInput = 2, kLimit = 3, kDisagree = 4 };

class IoError : public InvalidInput {
  using InvalidInput::InvalidInput;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
}

OmegaAutomaton load(const std::string& path) {
  try {
    return parse_oaf(read_file(path));
  } catch (const OafError& e) {
    throw InvalidInput(path + ":" + e.what());
  }
}

std::vector<Symbol> parse_word(const OmegaAutomaton& a, const std::string& text) {
  std::vector<Symbol> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(a.symbol(tok));
  }
  return out;
}

ExplorationLimits limits_from(std::size_t max_states, double max_seconds) {
  auto l = ExplorationLimits::from_env();
  if (max_states) l.max_states = max_states;
  l.max_seconds = max_seconds;
  return l;
}

void print_stats(const char* what, const ExplorationStats& s) {
  std::cerr << what << ": states=" << s.states << " transitions=" << s.transitions
            << " max_tree_nodes=" << s.max_tree_nodes << " seconds=" << s.seconds
            << (s.complete ? "" : " (partial)") << "\n";
}

struct Options {
  std::string input, output, dot, spec, impl, stem, loop, word, dot_dir;
  bool stats = false;
  std::size_t max_states = 0;
  double max_seconds = 0;
  std::size_t stem_max = 3, loop_max = 4;
  int family_n = 2;
  std::uint64_t k = 1;
};

int run_determinize(const Options& o) {
  const auto a = load(o.input);
  ExplorationStats stats;
  DeterminizeOptions opts;
  opts.limits = limits_from(o.max_states, o.max_seconds);
  Dpw d;
  try {
    d = determinize(a, opts, stats);
  } catch (const LimitExceeded&) {
    print_stats("determinize", stats);
    throw;
  }
  write_file(o.output, print_oaf(to_automaton(d)));
  if (!o.dot.empty()) write_file(o.dot, emit_dot(d));
  if (o.stats) print_stats("determinize", stats);
  return kOk;
}

int run_safra(const Options& o) {
  const auto a = load(o.input);
  ExplorationStats stats;
  SafraOptions opts;
  opts.limits = limits_from(o.max_states, o.max_seconds);
  Drw d;
  try {
    d = determinize_streett_safra(a, opts, stats);
  } catch (const LimitExceeded&) {
    print_stats("safra", stats);
    throw;
  }
  write_file(o.output, print_oaf(to_automaton(d)));
  if (o.stats) {
    print_stats("safra", stats);
    std::cerr << "safra: unnamed trees=" << count_unnamed(d.trees) << "\n";
  }
  return kOk;
}

int run_accepts(const Options& o) {
  const auto a = load(o.input);
  Lasso l{parse_word(a, o.stem), parse_word(a, o.loop)};
  if (l.loop.empty()) throw InvalidInput("--loop must name at least one symbol");
  bool verdict = a.num_states > kDefaultOracleBound && a.is_deterministic() ? deterministic_accepts_lasso(a, l)
                                                                            : accepts_lasso(a, l);
  std::cout << (verdict ? "true" : "false") << "\n";
  return kOk;
}

int run_equiv(const Options& o) {
  const auto spec = load(o.spec);
  const auto impl = load(o.impl);
  auto r = check_equivalence(spec, impl, o.stem_max, o.loop_max);
  std::cout << "lassos: " << r.total_lassos << " (stem <= " << r.stem_max << ", loop <= " << r.loop_max << ")\n";
  std::cout << "disagreements: " << r.disagreements.size() << "\n";
  for (std::size_t i = 0; i < r.disagreements.size() && i < 10; ++i) {
    const auto& d = r.disagreements[i];
    std::cout << "  " << to_string(d.lasso, spec.alphabet) << " spec=" << (d.expected ? "true" : "false")
              << " impl=" << (d.actual ? "true" : "false") << "\n";
  }
  return r.equivalent() ? kOk : kDisagree;
}

int run_family(const Options& o) {
  write_file(o.output, print_oaf(build_family_nsw(o.family_n)));
  return kOk;
}

int run_bound(const Options& o) {
  std::cout << "least n with n^2+n+1 >= k: " << rabin_index_state_lower_bound(o.k) << "\n";
  std::cout << "ceil(sqrt(k)) - 1: " << rabin_index_headline_bound(o.k) << "\n";
  return kOk;
}

int run_trace(const Options& o) {
  const auto a = load(o.input);
  const auto word = parse_word(a, o.word);
  if (!o.dot_dir.empty()) std::filesystem::create_directories(o.dot_dir);
  CgsContext ctx(a);
  auto t = initial_tree(a);
  std::string prefix;
  for (std::size_t i = 0;; ++i) {
    std::cout << (prefix.empty() ? "(empty)" : prefix) << ": nodes=" << t.size() << " e=" << t.e << " f=" << t.f
              << " priority=" << parity_index(t) << "\n";
    if (!o.dot_dir.empty())
      write_file((std::filesystem::path(o.dot_dir) / ("step_" + std::to_string(i) + ".dot")).string(), emit_dot(t));
    if (i == word.size()) break;
    t = generalized_next(ctx, t, word[i]);
    prefix += a.alphabet[word[i]];
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Determinization of ω-automata via compact generalized Safra trees"};
  app.require_subcommand(1);
  Options o;

  auto* det = app.add_subcommand("determinize", "Build the deterministic parity automaton");
  det->add_option("-i,--input", o.input, "Input automaton (OAF)")->required();
  det->add_option("-o,--output", o.output, "Output parity automaton (OAF); stdout when omitted");
  det->add_option("--dot", o.dot, "Also write the DPW as DOT");
  det->add_flag("--stats", o.stats, "Print construction statistics to stderr");
  det->add_option("--max-states", o.max_states, "State limit (default: ODET_MAX_STATES or 2000000)");
  det->add_option("--max-seconds", o.max_seconds, "Time limit in seconds");

  auto* saf = app.add_subcommand("safra", "Safra-Schwoon construction for Streett automata");
  saf->add_option("-i,--input", o.input, "Input Streett automaton (OAF)")->required();
  saf->add_option("-o,--output", o.output, "Output Rabin automaton (OAF); stdout when omitted");
  saf->add_flag("--stats", o.stats, "Print construction statistics to stderr");
  saf->add_option("--max-states", o.max_states, "State limit (default: ODET_MAX_STATES or 2000000)");
  saf->add_option("--max-seconds", o.max_seconds, "Time limit in seconds");

  auto* acc = app.add_subcommand("accepts", "Decide membership of stem.loop^w");
  acc->add_option("-i,--input", o.input, "Automaton (OAF)")->required();
  acc->add_option("--stem", o.stem, "Comma-separated stem symbols");
  acc->add_option("--loop", o.loop, "Comma-separated loop symbols")->required();

  auto* eq = app.add_subcommand("equiv", "Compare two automata on all bounded lassos");
  eq->add_option("--spec", o.spec, "Reference automaton (OAF)")->required();
  eq->add_option("--impl", o.impl, "Automaton under test (OAF)")->required();
  eq->add_option("--stem-max", o.stem_max, "Longest stem")->capture_default_str();
  eq->add_option("--loop-max", o.loop_max, "Longest loop")->capture_default_str();

  auto* fam = app.add_subcommand("family", "Emit the hard Streett family member");
  fam->add_option("-n", o.family_n, "Family parameter")->required();
  fam->add_option("-o,--output", o.output, "Output file (OAF); stdout when omitted");

  auto* bnd = app.add_subcommand("bound", "State lower bound for a DRW of Rabin index k");
  bnd->add_option("-k", o.k, "Rabin index")->required()->check(CLI::PositiveNumber);

  auto* tr = app.add_subcommand("trace", "Print the CGS tree after every prefix of a word");
  tr->add_option("-i,--input", o.input, "Automaton (OAF)")->required();
  tr->add_option("--word", o.word, "Comma-separated symbols")->required();
  tr->add_option("--dot-dir", o.dot_dir, "Directory for one DOT file per prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*det) return run_determinize(o);
    if (*saf) return run_safra(o);
    if (*acc) return run_accepts(o);
    if (*eq) return run_equiv(o);
    if (*fam) return run_family(o);
    if (*bnd) return run_bound(o);
    if (*tr) return run_trace(o);
  } catch (const LimitExceeded& e) {
    std::cerr << "odet: limit exceeded: " << e.what() << "\n";
    return kLimit;
  } catch (const InvalidInput& e) {
    std::cerr << "odet: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "odet: internal error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
