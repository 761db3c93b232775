#include "splice/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "splice/automata.hpp"
#include "splice/characterize.hpp"
#include "splice/compile.hpp"
#include "splice/engine.hpp"
#include "splice/error.hpp"
#include "splice/grammar.hpp"
#include "splice/sysfile.hpp"

namespace splice {

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kUsage = 2;
constexpr int kUnsupported = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_parse("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw_invalid("cannot write '" + path + "'");
  out << text;
}

// ---------------------------------------------------------------------------
// enumerate

struct EnumerateOptions {
  std::string file;
  std::size_t rounds = 10000;
  std::size_t report_len = 8;
  std::size_t work_len = 0;  // 0: same as report_len
  bool json_out = false;
};

int cmd_enumerate(const EnumerateOptions& opt, std::ostream& out) {
  SplicingSystem s = parse_system(opt.file);
  GenerationBudget budget;
  budget.max_rounds = opt.rounds;
  budget.report_len = opt.report_len;
  budget.work_len = opt.work_len ? opt.work_len : opt.report_len;
  GenerationResult res = generate(s, budget);

  // Inert initial words removed by normalization are still language words.
  std::set<Word> dropped;
  for (const CircWord& c : s.dropped_circ) {
    if (c.size() <= budget.report_len) dropped.insert(c.rep());
  }
  for (const Word& w : s.dropped_words) {
    if (w.size() <= budget.report_len) dropped.insert(w);
  }
  std::set<Word> all = res.words;
  all.insert(dropped.begin(), dropped.end());

  std::string note;
  if (s.kind == Kind::circular_head || s.kind == Kind::circular_pixton) {
    note = "iterated generation extends the single-step Head/Pixton definitions";
  }

  if (opt.json_out) {
    json j;
    j["command"] = "enumerate";
    j["words"] = json::array();
    for (const Word& w : sorted_shortlex(all)) {
      j["words"].push_back(res.circular ? circ_token(CircWord::of(w)) : word_token(w));
    }
    j["rounds"] = res.rounds_used;
    j["saturated"] = res.saturated;
    j["exact"] = res.exact;
    if (!dropped.empty()) {
      j["dropped"] = json::array();
      for (const Word& w : sorted_shortlex(dropped)) {
        j["dropped"].push_back(res.circular ? circ_token(CircWord::of(w)) : word_token(w));
      }
    }
    if (!note.empty()) j["note"] = note;
    out << j.dump(2) << "\n";
  } else {
    for (const Word& w : sorted_shortlex(all)) {
      out << (res.circular ? circ_token(CircWord::of(w)) : word_token(w)) << "\n";
    }
    out << "# rounds=" << res.rounds_used << " saturated=" << (res.saturated ? "yes" : "no")
        << " exact=" << (res.exact ? "yes" : "no") << "\n";
    if (!note.empty()) out << "# note: " << note << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// decide

struct DecideReport {
  std::string verdict;      // REGULAR | NOT_REGULAR | UNKNOWN
  std::string cls;          // unary | marked | extended-marked | complete
  std::string certificate;  // stable text form
  json extra = json::object();
  int code = kOk;
  std::string dot;  // optional graph/automaton export
};

std::string p4_text(const std::vector<Sym>& p4) {
  std::string out = "P4:";
  for (Sym a : p4) {
    out += ' ';
    out += a;
  }
  return out;
}

DecideReport decide_system(const SplicingSystem& s) {
  DecideReport rep;
  if (s.kind != Kind::circular_paun) {
    rep.verdict = "UNKNOWN";
    rep.code = kUnsupported;
    rep.certificate =
        "decision procedures cover marked, complete and unary circular systems only";
    return rep;
  }

  if (s.alphabet.size() == 1) {
    rep.cls = "unary";
    rep.verdict = "REGULAR";  // unary splicing languages are always regular
    auto form = unary_closed_form(s);
    if (std::holds_alternative<UnaryFinite>(form)) {
      const auto& f = std::get<UnaryFinite>(form);
      std::string lens = "finite exponents {";
      bool first = true;
      for (std::size_t v : f.lengths) {
        if (!first) lens += ",";
        first = false;
        lens += std::to_string(v);
      }
      lens += "}";
      rep.certificate = lens;
    } else {
      const auto& f = std::get<UnaryForm>(form);
      rep.certificate = f.text();
      rep.dot = to_dot(unary_form_to_dfa(f, s.alphabet[0]));
    }
    return rep;
  }

  if (auto m = as_marked(s)) {
    rep.cls = "marked";
    Diameters d = marked_diameters(*m);
    MarkedRegularity reg = marked_is_regular(*m);
    rep.extra["delta"] = d.delta;
    rep.extra["delta_local"] = d.delta_local;
    rep.dot = to_dot(*m);
    if (reg.regular) {
      rep.verdict = "REGULAR";
      rep.certificate = "delta=" + std::to_string(d.delta) +
                        " delta_local=" + std::to_string(d.delta_local) + " (<= 3, P4-free)";
    } else {
      rep.verdict = "NOT_REGULAR";
      rep.certificate = p4_text(reg.p4);
    }
    return rep;
  }

  // extended marked systems reduce to marked ones
  bool extended_ok = false;
  ExtendedReduction red;
  try {
    red = extended_reduce(s);
    extended_ok = true;
  } catch (const Error&) {
  }
  if (extended_ok) {
    rep.cls = "extended-marked";
    Diameters d = marked_diameters(red.marked);
    MarkedRegularity reg = marked_is_regular(red.marked);
    rep.extra["delta"] = d.delta;
    rep.extra["delta_local"] = d.delta_local;
    json dec = json::object();
    for (const auto& [letter, block] : red.decoration) {
      dec[std::string(1, letter)] = block;
    }
    rep.extra["decoration"] = dec;
    rep.dot = to_dot(red.marked);
    if (reg.regular) {
      rep.verdict = "REGULAR";
      rep.certificate = "reduced marked system is P4-free (delta_local=" +
                        std::to_string(d.delta_local) + ")";
    } else {
      rep.verdict = "NOT_REGULAR";
      rep.certificate = p4_text(reg.p4) + " (in the reduced marked system)";
    }
    return rep;
  }

  CompleteCheck cc = complete_check(s);
  if (cc.complete) {
    if (cc.positions == std::make_pair(2, 3)) {
      rep.cls = "complete";
      rep.verdict = "UNKNOWN";
      rep.code = kUnsupported;
      rep.certificate =
          "(2,3)-complete systems have no syntactic conversion to (1,3); "
          "only enumeration cross-checks are available";
      return rep;
    }
    rep.cls = "complete";
    rep.extra["positions"] =
        "(" + std::to_string(cc.positions.first) + "," + std::to_string(cc.positions.second) + ")";
    CompleteRegularity reg = complete_is_regular(s);
    if (reg.regular) {
      rep.verdict = "REGULAR";
      rep.certificate = "k0=" + std::to_string(reg.certificate.k0);
    } else {
      rep.verdict = "NOT_REGULAR";
      rep.certificate = "avoidance cycle: " +
                        (reg.certificate.prefix.empty()
                             ? reg.certificate.cycle
                             : reg.certificate.prefix + "." + reg.certificate.cycle);
    }
    return rep;
  }

  rep.verdict = "UNKNOWN";
  rep.code = kUnsupported;
  rep.certificate =
      "system is not marked, extended-marked, complete or unary; regularity of "
      "general circular splicing languages is an open problem";
  return rep;
}

int cmd_decide(const std::string& file, bool json_out, const std::string& dot_path,
               std::ostream& out) {
  SplicingSystem s = parse_system(file);
  DecideReport rep = decide_system(s);
  if (!dot_path.empty() && !rep.dot.empty()) write_file(dot_path, rep.dot);
  if (json_out) {
    json j;
    j["command"] = "decide";
    j["verdict"] = rep.verdict;
    if (!rep.cls.empty()) j["class"] = rep.cls;
    j["certificate"] = rep.certificate;
    for (auto it = rep.extra.begin(); it != rep.extra.end(); ++it) j[it.key()] = it.value();
    out << j.dump(2) << "\n";
  } else {
    out << rep.verdict << "\n";
    if (!rep.cls.empty()) out << "class: " << rep.cls << "\n";
    out << "certificate: " << rep.certificate << "\n";
  }
  return rep.code;
}

// ---------------------------------------------------------------------------
// compile / member

int cmd_compile(const std::string& file, const std::string& out_path, bool cnf, bool json_out,
                std::ostream& out) {
  SplicingSystem s = parse_system(file);
  GenCfg g = compile_gen(s);
  std::string text = cnf ? grammar_to_text(lower(g)) : grammar_to_text(g);
  if (!out_path.empty()) write_file(out_path, text);
  if (json_out) {
    json j;
    j["command"] = "compile";
    j["verdict"] = "ok";
    j["cnf"] = cnf;
    if (out_path.empty()) {
      j["grammar"] = text;
    } else {
      j["out"] = out_path;
    }
    out << j.dump(2) << "\n";
  } else if (out_path.empty()) {
    out << text;
  } else {
    out << "# grammar written to " << out_path << "\n";
  }
  return kOk;
}

bool looks_like_system_file(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    return line.compare(first, 5, "kind:") == 0;
  }
  return false;
}

int cmd_member(const std::string& file, const std::string& word_tok, bool json_out,
               std::ostream& out) {
  std::string text = read_file(file);
  Cfg cnf;
  std::string source;
  if (looks_like_system_file(text)) {
    cnf = compile(parse_system_text(text));
    source = "system";
  } else {
    cnf = to_cnf(grammar_from_text(text));
    source = "grammar";
  }
  Word w = word_tok == "_" ? Word() : word_tok;
  bool member = cyk_member(cnf, w);
  if (json_out) {
    json j;
    j["command"] = "member";
    j["verdict"] = member;
    j["word"] = word_token(w);
    j["source"] = source;
    out << j.dump(2) << "\n";
  } else {
    out << (member ? "true" : "false") << "\n";
  }
  return member ? kOk : kFalse;
}

// ---------------------------------------------------------------------------
// equal

// Homomorphic image of a DFA language under letter -> block substitution.
Nfa substitute_blocks(const Dfa& d, const std::map<Sym, Word>& blocks,
                      const std::string& out_alphabet) {
  Nfa n;
  n.alphabet = out_alphabet;
  for (int s = 0; s < d.num_states; ++s) n.add_state();
  n.initials.insert(d.initial);
  for (int s = 0; s < d.num_states; ++s) {
    if (d.finals[s]) n.finals.insert(s);
    for (std::size_t ai = 0; ai < d.alphabet.size(); ++ai) {
      const Word& block = blocks.at(d.alphabet[ai]);
      int target = d.delta[s][ai];
      int cur = s;
      for (std::size_t i = 0; i < block.size(); ++i) {
        int next = (i + 1 == block.size()) ? target : n.add_state();
        n.add_edge(cur, block[i], next);
        cur = next;
      }
    }
  }
  return n;
}

// Exact automaton for the full linearization of the system's language,
// where one is known: marked, extended marked and unary systems.
std::optional<Dfa> exact_linearization_dfa(const SplicingSystem& s) {
  if (s.kind != Kind::circular_paun) return std::nullopt;
  if (s.alphabet.size() == 1) {
    auto form = unary_closed_form(s);
    UnarySpectrum spec;
    if (std::holds_alternative<UnaryFinite>(form)) {
      spec.n0 = 0;
      spec.period = 1;
      for (std::size_t v : std::get<UnaryFinite>(form).lengths) spec.explicit_members.insert(v);
      spec.n0 = spec.explicit_members.empty() ? 0 : *spec.explicit_members.rbegin() + 1;
      return spectrum_to_dfa(spec, s.alphabet[0]);
    }
    return unary_form_to_dfa(std::get<UnaryForm>(form), s.alphabet[0]);
  }
  if (auto m = as_marked(s)) {
    if (marked_is_regular(*m).regular) return marked_automaton(*m);
    return std::nullopt;
  }
  try {
    ExtendedReduction red = extended_reduce(s);
    if (!marked_is_regular(red.marked).regular) return std::nullopt;
    Dfa base = marked_automaton(red.marked);
    Nfa image = substitute_blocks(base, red.decoration, s.alphabet);
    // the decorated language is one linearization; close under rotation
    return minimize(determinize(cyclic_closure(minimize(determinize(image)))));
  } catch (const Error&) {
    return std::nullopt;
  }
}

int cmd_equal(const std::string& file, const std::string& regex, std::size_t max_len,
              bool json_out, const std::string& dot_path, std::ostream& out) {
  SplicingSystem s = parse_system(file);
  Dfa want = regex_to_dfa(regex);

  json j;
  j["command"] = "equal";
  j["regex"] = regex;

  if (auto have = exact_linearization_dfa(s)) {
    if (!dot_path.empty()) write_file(dot_path, to_dot(*have));
    Dfa only_have = difference(*have, want);
    Dfa only_want = difference(want, *have);
    auto w1 = shortest_word(only_have);
    auto w2 = shortest_word(only_want);
    if (!w1 && !w2) {
      j["verdict"] = "EQUAL_EXACT";
      if (json_out) out << j.dump(2) << "\n";
      else out << "EQUAL_EXACT\n";
      return kOk;
    }
    Word witness;
    if (w1 && w2) witness = shortlex_less(*w1, *w2) ? *w1 : *w2;
    else witness = w1 ? *w1 : *w2;
    j["verdict"] = "DIFFER";
    j["witness"] = word_token(witness);
    j["witness_side"] = (w1 && witness == *w1) ? "system" : "regex";
    if (json_out) out << j.dump(2) << "\n";
    else out << "DIFFER witness=" << word_token(witness) << "\n";
    return kFalse;
  }

  // bounded comparison
  GenerationBudget budget;
  budget.max_rounds = 100000;
  budget.work_len = max_len;
  budget.report_len = max_len;
  GenerationResult res = generate(s, budget);
  std::set<Word> have;
  if (res.circular) {
    have = linearize(res.circ_words());
    for (const CircWord& c : s.dropped_circ) {
      if (c.size() <= max_len) {
        for (const Word& r : rotations(c.rep())) have.insert(r);
      }
    }
  } else {
    have = res.words;
    for (const Word& w : s.dropped_words) {
      if (w.size() <= max_len) have.insert(w);
    }
  }
  std::set<Word> want_set;
  for (const Word& w : enumerate_dfa(want, max_len)) want_set.insert(w);

  std::optional<Word> witness;
  for (const Word& w : sorted_shortlex(have)) {
    if (!want_set.count(w)) {
      witness = w;
      break;
    }
  }
  for (const Word& w : sorted_shortlex(want_set)) {
    if (!have.count(w) && (!witness || shortlex_less(w, *witness))) {
      witness = w;
      break;
    }
  }
  j["bound"] = max_len;
  j["saturated"] = res.saturated;
  j["exact_enumeration"] = res.exact;
  if (witness) {
    j["verdict"] = "DIFFER";
    j["witness"] = word_token(*witness);
    if (!res.exact) {
      j["note"] = "enumeration is heuristic for this kind; a missing word may be a budget artifact";
    }
    if (json_out) out << j.dump(2) << "\n";
    else out << "DIFFER witness=" << word_token(*witness) << " bound=" << max_len << "\n";
    return kFalse;
  }
  j["verdict"] = "BOUNDED_AGREE";
  if (json_out) out << j.dump(2) << "\n";
  else out << "BOUNDED_AGREE bound=" << max_len << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------

int cmd_show(const std::string& file, std::ostream& out) {
  out << print_system(parse_system(file));
  return kOk;
}

int run(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"splicing systems toolkit"};
  app.require_subcommand(1);

  EnumerateOptions en;
  bool json_out = false;
  std::string file, out_path, regex, word_tok, dot_path;
  bool cnf = false;
  std::size_t max_len = 8;

  auto* c_enum = app.add_subcommand("enumerate", "generate the language under a budget");
  c_enum->add_option("file", en.file, "system file")->required();
  c_enum->add_option("--rounds", en.rounds, "maximum number of splicing rounds");
  c_enum->add_option("--report-len", en.report_len, "report words up to this length");
  c_enum->add_option("--work-len", en.work_len, "work on words up to this length");
  c_enum->add_flag("--json", en.json_out, "machine-readable report");

  auto* c_decide = app.add_subcommand("decide", "decide regularity for characterized classes");
  c_decide->add_option("file", file, "system file")->required();
  c_decide->add_flag("--json", json_out, "machine-readable report");
  c_decide->add_option("--dot", dot_path, "write the certificate graph or automaton as DOT");

  auto* c_compile = app.add_subcommand("compile", "compile an alphabetic system to a grammar");
  c_compile->add_option("file", file, "system file")->required();
  c_compile->add_option("--out", out_path, "write the grammar to a file");
  c_compile->add_flag("--cnf", cnf, "lower to Chomsky normal form");
  c_compile->add_flag("--json", json_out, "machine-readable report");

  auto* c_member = app.add_subcommand("member", "membership through the compiled grammar");
  c_member->add_option("file", file, "system or grammar file")->required();
  c_member->add_option("word", word_tok, "word to test ('_' for the empty word)")->required();
  c_member->add_flag("--json", json_out, "machine-readable report");

  auto* c_equal = app.add_subcommand("equal", "compare the language against a regex");
  c_equal->add_option("file", file, "system file")->required();
  c_equal->add_option("--regex", regex, "regular expression")->required();
  c_equal->add_option("--max-len", max_len, "bound for the bounded comparison");
  c_equal->add_flag("--json", json_out, "machine-readable report");
  c_equal->add_option("--dot", dot_path, "write the exact system automaton as DOT");

  auto* c_show = app.add_subcommand("show", "parse and print the normalized system");
  c_show->add_option("file", file, "system file")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  }

  if (c_enum->parsed()) return cmd_enumerate(en, out);
  if (c_decide->parsed()) return cmd_decide(file, json_out, dot_path, out);
  if (c_compile->parsed()) return cmd_compile(file, out_path, cnf, json_out, out);
  if (c_member->parsed()) return cmd_member(file, word_tok, json_out, out);
  if (c_equal->parsed()) return cmd_equal(file, regex, max_len, json_out, dot_path, out);
  if (c_show->parsed()) return cmd_show(file, out);
  return kUsage;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run(args, out);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::unsupported ? kUnsupported : kUsage;
  }
}

}  // namespace splice
