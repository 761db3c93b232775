#include "splice/grammar.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "splice/error.hpp"

namespace splice {

Rx Rx::eps() { return Rx{}; }

Rx Rx::s(GSym g) {
  Rx r;
  r.op = Op::sym;
  r.sym = g;
  return r;
}

Rx Rx::word(const Word& w) {
  std::vector<Rx> ks;
  for (Sym c : w) ks.push_back(s(term_sym(c)));
  return cat(std::move(ks));
}

Rx Rx::cat(std::vector<Rx> ks) {
  if (ks.empty()) return eps();
  if (ks.size() == 1) return ks[0];
  Rx r;
  r.op = Op::cat;
  r.kids = std::move(ks);
  return r;
}

Rx Rx::alt(std::vector<Rx> ks) {
  if (ks.size() == 1) return ks[0];
  Rx r;
  r.op = Op::alt;
  r.kids = std::move(ks);
  return r;
}

Rx Rx::star(Rx k) {
  Rx r;
  r.op = Op::star;
  r.kids.push_back(std::move(k));
  return r;
}

Rx Rx::plus(Rx k) {
  Rx r;
  r.op = Op::plus;
  r.kids.push_back(std::move(k));
  return r;
}

int GenCfg::add_nt(const std::string& name) {
  nt_names.push_back(name);
  return static_cast<int>(nt_names.size()) - 1;
}

int GenCfg::find_nt(const std::string& name) const {
  for (std::size_t i = 0; i < nt_names.size(); ++i) {
    if (nt_names[i] == name) return static_cast<int>(i);
  }
  return -1;
}

int Cfg::add_nt(const std::string& name) {
  nt_names.push_back(name);
  return static_cast<int>(nt_names.size()) - 1;
}

// ---------------------------------------------------------------------------
// Lowering.

namespace {

class Lowerer {
 public:
  explicit Lowerer(const GenCfg& g) : g_(g) {
    out_.nt_names = g.nt_names;
    out_.terminals = g.terminals;
    out_.start = g.start;
  }

  Cfg run() {
    for (const auto& [nt, rx] : g_.prods) {
      // Top-level alternatives map directly onto productions of nt.
      std::vector<const Rx*> alts;
      if (rx.op == Rx::Op::alt) {
        for (const Rx& k : rx.kids) alts.push_back(&k);
      } else {
        alts.push_back(&rx);
      }
      for (const Rx* a : alts) out_.prods.push_back({nt, seq_of(*a)});
    }
    std::sort(out_.prods.begin(), out_.prods.end());
    out_.prods.erase(std::unique(out_.prods.begin(), out_.prods.end()), out_.prods.end());
    return std::move(out_);
  }

 private:
  std::vector<GSym> seq_of(const Rx& rx) {
    switch (rx.op) {
      case Rx::Op::eps:
        return {};
      case Rx::Op::sym:
        return {rx.sym};
      case Rx::Op::cat: {
        std::vector<GSym> seq;
        for (const Rx& k : rx.kids) {
          auto part = seq_of(k);
          seq.insert(seq.end(), part.begin(), part.end());
        }
        return seq;
      }
      case Rx::Op::alt: {
        int nt = fresh();
        for (const Rx& k : rx.kids) out_.prods.push_back({nt, seq_of(k)});
        return {nt};
      }
      case Rx::Op::star: {
        int nt = fresh();
        out_.prods.push_back({nt, {}});
        auto body = seq_of(rx.kids[0]);
        body.push_back(nt);
        out_.prods.push_back({nt, body});
        return {nt};
      }
      case Rx::Op::plus: {
        auto body = seq_of(rx.kids[0]);
        auto rep = seq_of(Rx::star(rx.kids[0]));
        body.insert(body.end(), rep.begin(), rep.end());
        return body;
      }
    }
    return {};
  }

  int fresh() { return out_.add_nt("X" + std::to_string(++fresh_count_)); }

  const GenCfg& g_;
  Cfg out_;
  int fresh_count_ = 0;
};

}  // namespace

Cfg lower_to_plain(const GenCfg& g) { return Lowerer(g).run(); }

Cfg lower(const GenCfg& g) { return to_cnf(lower_to_plain(g)); }

// ---------------------------------------------------------------------------
// CNF.

namespace {

std::set<int> nullable_set(const Cfg& g) {
  std::set<int> nullable;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : g.prods) {
      if (nullable.count(p.lhs)) continue;
      bool all = true;
      for (GSym s : p.rhs) {
        if (is_term(s) || !nullable.count(s)) {
          all = false;
          break;
        }
      }
      if (all) {
        nullable.insert(p.lhs);
        changed = true;
      }
    }
  }
  return nullable;
}

}  // namespace

Cfg to_cnf(const Cfg& g_in) {
  Cfg g = g_in;

  // START: fresh start symbol so the start never occurs on a right side.
  int start = g.add_nt("S'");
  g.prods.push_back({start, {g.start}});
  g.start = start;

  // DEL: remove epsilon productions, tracking start nullability.
  std::set<int> nullable = nullable_set(g);
  g.start_nullable = nullable.count(start) > 0;
  std::set<Cfg::Prod> expanded;
  for (const auto& p : g.prods) {
    // expand over subsets of nullable occurrences
    std::vector<std::size_t> null_pos;
    for (std::size_t i = 0; i < p.rhs.size(); ++i) {
      if (!is_term(p.rhs[i]) && nullable.count(p.rhs[i])) null_pos.push_back(i);
    }
    if (null_pos.size() > 20) throw_internal("to_cnf: too many nullable symbols in one rhs");
    for (std::size_t mask = 0; mask < (std::size_t{1} << null_pos.size()); ++mask) {
      std::vector<GSym> rhs;
      std::size_t ni = 0;
      for (std::size_t i = 0; i < p.rhs.size(); ++i) {
        bool drop = false;
        if (ni < null_pos.size() && null_pos[ni] == i) {
          drop = (mask >> ni) & 1;
          ++ni;
        }
        if (!drop) rhs.push_back(p.rhs[i]);
      }
      if (!rhs.empty()) expanded.insert({p.lhs, std::move(rhs)});
    }
  }

  // UNIT: collapse chains of single-nonterminal productions.
  const int n = static_cast<int>(g.nt_names.size());
  std::vector<std::set<int>> unit_reach(n);
  for (int i = 0; i < n; ++i) unit_reach[i].insert(i);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : expanded) {
      if (p.rhs.size() == 1 && !is_term(p.rhs[0])) {
        for (int i = 0; i < n; ++i) {
          if (!unit_reach[i].count(p.lhs)) continue;
          if (unit_reach[i].insert(p.rhs[0]).second) changed = true;
        }
      }
    }
  }
  std::set<Cfg::Prod> unitfree;
  for (int i = 0; i < n; ++i) {
    for (int j : unit_reach[i]) {
      for (const auto& p : expanded) {
        if (p.lhs != j) continue;
        if (p.rhs.size() == 1 && !is_term(p.rhs[0])) continue;
        unitfree.insert({i, p.rhs});
      }
    }
  }

  // TERM + BIN.
  Cfg out;
  out.nt_names = g.nt_names;
  out.terminals = g.terminals;
  out.start = g.start;
  out.start_nullable = g.start_nullable;
  std::map<Sym, int> term_nt;
  auto term_wrap = [&](Sym c) {
    auto it = term_nt.find(c);
    if (it != term_nt.end()) return it->second;
    int nt = out.add_nt(std::string("T_") + c);
    out.prods.push_back({nt, {term_sym(c)}});
    term_nt[c] = nt;
    return nt;
  };
  int bin_count = 0;
  for (const auto& p : unitfree) {
    std::vector<GSym> rhs = p.rhs;
    if (rhs.size() == 1) {
      out.prods.push_back(p);  // single terminal
      continue;
    }
    for (GSym& s : rhs) {
      if (is_term(s)) s = term_wrap(term_char(s));
    }
    out.prods.push_back({p.lhs, rhs});
  }

  // Binarize productions longer than 2.
  bool more = true;
  while (more) {
    more = false;
    std::vector<Cfg::Prod> next;
    for (const auto& p : out.prods) {
      if (p.rhs.size() <= 2) {
        next.push_back(p);
        continue;
      }
      more = true;
      int nt = out.add_nt("B" + std::to_string(++bin_count));
      next.push_back({p.lhs, {p.rhs[0], nt}});
      next.push_back({nt, std::vector<GSym>(p.rhs.begin() + 1, p.rhs.end())});
    }
    out.prods = std::move(next);
  }

  // Drop productions that mention non-productive nonterminals, then the
  // ones unreachable from the start symbol.
  std::set<int> productive;
  bool grow = true;
  while (grow) {
    grow = false;
    for (const auto& p : out.prods) {
      if (productive.count(p.lhs)) continue;
      bool all = true;
      for (GSym s : p.rhs) {
        if (!is_term(s) && !productive.count(s)) {
          all = false;
          break;
        }
      }
      if (all) {
        productive.insert(p.lhs);
        grow = true;
      }
    }
  }
  std::vector<Cfg::Prod> kept;
  for (const auto& p : out.prods) {
    bool ok = productive.count(p.lhs) > 0;
    for (GSym s : p.rhs) {
      if (!is_term(s) && !productive.count(s)) ok = false;
    }
    if (ok) kept.push_back(p);
  }
  std::set<int> reach{out.start};
  grow = true;
  while (grow) {
    grow = false;
    for (const auto& p : kept) {
      if (!reach.count(p.lhs)) continue;
      for (GSym s : p.rhs) {
        if (!is_term(s) && reach.insert(s).second) grow = true;
      }
    }
  }
  out.prods.clear();
  for (const auto& p : kept) {
    if (reach.count(p.lhs)) out.prods.push_back(p);
  }

  std::sort(out.prods.begin(), out.prods.end());
  out.prods.erase(std::unique(out.prods.begin(), out.prods.end()), out.prods.end());
  out.cnf = true;
  return out;
}

// ---------------------------------------------------------------------------
// CYK and enumeration.

bool cyk_member(const Cfg& g, const Word& w) {
  if (!g.cnf) throw_invalid("cyk_member: grammar is not in CNF");
  for (Sym c : w) {
    if (g.terminals.find(c) == std::string::npos) {
      throw_invalid(std::string("cyk_member: symbol '") + c + "' not a terminal");
    }
  }
  if (w.empty()) return g.start_nullable;
  const std::size_t n = w.size();
  const std::size_t nnt = g.nt_names.size();
  // table[len-1][i] = set of nonterminals deriving w[i, i+len)
  std::vector<std::vector<std::vector<bool>>> table(
      n, std::vector<std::vector<bool>>(n, std::vector<bool>(nnt, false)));

  std::vector<std::pair<int, Sym>> term_prods;
  std::vector<std::array<int, 3>> bin_prods;
  for (const auto& p : g.prods) {
    if (p.rhs.size() == 1 && is_term(p.rhs[0])) {
      term_prods.push_back({p.lhs, term_char(p.rhs[0])});
    } else if (p.rhs.size() == 2) {
      bin_prods.push_back({p.lhs, p.rhs[0], p.rhs[1]});
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [lhs, c] : term_prods) {
      if (c == w[i]) table[0][i][lhs] = true;
    }
  }
  for (std::size_t len = 2; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      auto& cell = table[len - 1][i];
      for (std::size_t split = 1; split < len; ++split) {
        const auto& left = table[split - 1][i];
        const auto& right = table[len - split - 1][i + split];
        for (const auto& bp : bin_prods) {
          if (!cell[bp[0]] && left[bp[1]] && right[bp[2]]) cell[bp[0]] = true;
        }
      }
    }
  }
  return table[n - 1][0][g.start];
}

std::vector<Word> grammar_enumerate(const Cfg& g, std::size_t maxlen) {
  if (!g.cnf) throw_invalid("grammar_enumerate: grammar is not in CNF");
  const std::size_t nnt = g.nt_names.size();
  // words[nt][len] = set of derivable words of that length
  std::vector<std::vector<std::set<Word>>> words(nnt, std::vector<std::set<Word>>(maxlen + 1));
  for (const auto& p : g.prods) {
    if (p.rhs.size() == 1 && is_term(p.rhs[0]) && maxlen >= 1) {
      words[p.lhs][1].insert(Word(1, term_char(p.rhs[0])));
    }
  }
  for (std::size_t len = 2; len <= maxlen; ++len) {
    for (const auto& p : g.prods) {
      if (p.rhs.size() != 2) continue;
      for (std::size_t l = 1; l < len; ++l) {
        for (const Word& a : words[p.rhs[0]][l]) {
          for (const Word& b : words[p.rhs[1]][len - l]) {
            words[p.lhs][len].insert(a + b);
          }
        }
      }
    }
  }
  std::set<Word> all;
  if (g.start_nullable) all.insert(Word());
  for (std::size_t len = 1; len <= maxlen; ++len) {
    all.insert(words[g.start][len].begin(), words[g.start][len].end());
  }
  return sorted_shortlex(all);
}

// ---------------------------------------------------------------------------
// Reversal.

namespace {

Rx reverse_rx(const Rx& r) {
  switch (r.op) {
    case Rx::Op::eps:
    case Rx::Op::sym:
      return r;
    case Rx::Op::cat: {
      std::vector<Rx> ks;
      for (auto it = r.kids.rbegin(); it != r.kids.rend(); ++it) ks.push_back(reverse_rx(*it));
      return Rx::cat(std::move(ks));
    }
    case Rx::Op::alt: {
      std::vector<Rx> ks;
      for (const Rx& k : r.kids) ks.push_back(reverse_rx(k));
      return Rx::alt(std::move(ks));
    }
    case Rx::Op::star:
      return Rx::star(reverse_rx(r.kids[0]));
    case Rx::Op::plus:
      return Rx::plus(reverse_rx(r.kids[0]));
  }
  return r;
}

std::string reverse_nt_name(const std::string& name) {
  // K{x,y} style names swap their boundary letters.
  if (name.size() == 6 && name[1] == '{' && name[3] == ',' && name[5] == '}') {
    std::string out = name;
    std::swap(out[2], out[4]);
    return out;
  }
  return name;
}

}  // namespace

GenCfg reverse_grammar(GenCfg g) {
  for (auto& [nt, rx] : g.prods) rx = reverse_rx(rx);
  for (std::string& name : g.nt_names) name = reverse_nt_name(name);
  return g;
}

// ---------------------------------------------------------------------------
// Text format.

namespace {

std::string sym_text(const Cfg& g, GSym s) {
  if (is_term(s)) return std::string(1, term_char(s));
  return g.nt_names[s];
}

void append_productions(std::ostringstream& out, const std::string& lhs,
                        const std::vector<std::vector<std::string>>& alts) {
  out << lhs << " ->";
  bool first = true;
  for (const auto& alt : alts) {
    out << (first ? " " : " | ");
    first = false;
    if (alt.empty()) {
      out << "@";
    } else {
      for (std::size_t i = 0; i < alt.size(); ++i) {
        if (i) out << " ";
        out << alt[i];
      }
    }
  }
  out << "\n";
}

}  // namespace

std::string grammar_to_text(const Cfg& g) {
  std::ostringstream out;
  out << "start: " << g.nt_names[g.start] << "\n";
  out << "terminals:";
  for (Sym c : g.terminals) out << " " << c;
  out << "\n";
  // start first, then the others in id order
  std::vector<int> order{g.start};
  for (int i = 0; i < static_cast<int>(g.nt_names.size()); ++i) {
    if (i != g.start) order.push_back(i);
  }
  for (int nt : order) {
    std::vector<std::vector<std::string>> alts;
    for (const auto& p : g.prods) {
      if (p.lhs != nt) continue;
      std::vector<std::string> alt;
      for (GSym s : p.rhs) alt.push_back(sym_text(g, s));
      alts.push_back(std::move(alt));
    }
    if (nt == g.start && g.start_nullable) alts.insert(alts.begin(), {});
    if (!alts.empty()) append_productions(out, g.nt_names[nt], alts);
  }
  return out.str();
}

std::string grammar_to_text(const GenCfg& g) {
  std::ostringstream out;
  out << "start: " << g.nt_names[g.start] << "\n";
  out << "terminals:";
  for (Sym c : g.terminals) out << " " << c;
  out << "\n";
  std::vector<int> order;
  if (g.prods.count(g.start)) order.push_back(g.start);
  for (const auto& [nt, rx] : g.prods) {
    (void)rx;
    if (nt != g.start) order.push_back(nt);
  }
  for (int nt : order) {
    const Rx& rx = g.prods.at(nt);
    std::vector<const Rx*> alts;
    if (rx.op == Rx::Op::alt) {
      for (const Rx& k : rx.kids) alts.push_back(&k);
    } else {
      alts.push_back(&rx);
    }
    std::vector<std::vector<std::string>> alt_texts;
    for (const Rx* a : alts) {
      std::vector<const Rx*> parts;
      if (a->op == Rx::Op::cat) {
        for (const Rx& k : a->kids) parts.push_back(&k);
      } else {
        parts.push_back(a);
      }
      std::vector<std::string> text;
      for (const Rx* p : parts) {
        if (p->op == Rx::Op::eps) continue;
        if (p->op != Rx::Op::sym) throw_invalid("grammar_to_text: right side is not alt-of-cat");
        text.push_back(is_term(p->sym) ? std::string(1, term_char(p->sym))
                                       : g.nt_names[p->sym]);
      }
      alt_texts.push_back(std::move(text));
    }
    append_productions(out, g.nt_names[nt], alt_texts);
  }
  return out.str();
}

Cfg grammar_from_text(const std::string& text) {
  Cfg g;
  std::istringstream in(text);
  std::string line;
  std::string start_name;
  std::map<std::string, int> nts;
  auto intern = [&](const std::string& name) {
    auto it = nts.find(name);
    if (it != nts.end()) return it->second;
    int id = g.add_nt(name);
    nts[name] = id;
    return id;
  };
  struct RawProd {
    std::string lhs;
    std::vector<std::vector<std::string>> alts;
  };
  std::vector<RawProd> raw;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string trimmed = line;
    if (auto pos = trimmed.find('#'); pos != std::string::npos) trimmed = trimmed.substr(0, pos);
    std::istringstream ls(trimmed);
    std::vector<std::string> tok;
    std::string t;
    while (ls >> t) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0] == "start:") {
      if (tok.size() != 2) throw_parse("grammar line " + std::to_string(lineno) + ": bad start");
      start_name = tok[1];
    } else if (tok[0] == "terminals:") {
      for (std::size_t i = 1; i < tok.size(); ++i) {
        if (tok[i].size() != 1) {
          throw_parse("grammar line " + std::to_string(lineno) + ": terminals are single chars");
        }
        g.terminals += tok[i];
      }
      std::sort(g.terminals.begin(), g.terminals.end());
    } else {
      if (tok.size() < 2 || tok[1] != "->") {
        throw_parse("grammar line " + std::to_string(lineno) + ": expected 'N -> ...'");
      }
      RawProd p;
      p.lhs = tok[0];
      std::vector<std::string> cur;
      for (std::size_t i = 2; i < tok.size(); ++i) {
        if (tok[i] == "|") {
          p.alts.push_back(cur);
          cur.clear();
        } else {
          cur.push_back(tok[i]);
        }
      }
      p.alts.push_back(cur);
      raw.push_back(std::move(p));
    }
  }
  if (start_name.empty()) throw_parse("grammar: missing start line");
  for (const auto& p : raw) intern(p.lhs);
  g.start = intern(start_name);
  for (const auto& p : raw) {
    int lhs = intern(p.lhs);
    for (const auto& alt : p.alts) {
      std::vector<GSym> rhs;
      bool is_eps = alt.size() == 1 && alt[0] == "@";
      if (!is_eps) {
        for (const std::string& tk : alt) {
          if (nts.count(tk)) {
            rhs.push_back(nts[tk]);
          } else if (tk.size() == 1 && g.terminals.find(tk[0]) != std::string::npos) {
            rhs.push_back(term_sym(tk[0]));
          } else {
            throw_parse("grammar: unknown symbol '" + tk + "'");
          }
        }
      }
      g.prods.push_back({lhs, rhs});
    }
  }
  return g;
}

}  // namespace splice
