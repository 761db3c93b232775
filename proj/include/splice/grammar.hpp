#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "splice/word.hpp"

namespace splice {

// Grammar symbols: nonterminal ids are >= 0, terminals are encoded negative.
using GSym = int;
inline GSym term_sym(Sym c) { return -1 - static_cast<int>(static_cast<unsigned char>(c)); }
inline bool is_term(GSym s) { return s < 0; }
inline Sym term_char(GSym s) { return static_cast<Sym>(static_cast<unsigned char>(-1 - s)); }

// Regular expression over grammar symbols, used as generalized right sides.
struct Rx {
  enum class Op { eps, sym, cat, alt, star, plus };
  Op op = Op::eps;
  GSym sym = 0;
  std::vector<Rx> kids;

  static Rx eps();
  static Rx s(GSym g);
  static Rx word(const Word& w);
  static Rx cat(std::vector<Rx> ks);
  static Rx alt(std::vector<Rx> ks);
  static Rx star(Rx k);
  static Rx plus(Rx k);

  bool operator==(const Rx&) const = default;
};

// Generalized context-free grammar: one regex right side per nonterminal.
struct GenCfg {
  std::vector<std::string> nt_names;
  std::string terminals;  // sorted, unique
  int start = 0;
  std::map<int, Rx> prods;

  int add_nt(const std::string& name);
  int find_nt(const std::string& name) const;  // -1 if absent

  bool operator==(const GenCfg&) const = default;
};

// Plain context-free grammar. After to_cnf() every right side is two
// nonterminals or one terminal, and emptiness is admitted only through
// the start_nullable flag.
struct Cfg {
  std::vector<std::string> nt_names;
  std::string terminals;
  int start = 0;
  struct Prod {
    int lhs;
    std::vector<GSym> rhs;
    auto operator<=>(const Prod&) const = default;
  };
  std::vector<Prod> prods;
  bool start_nullable = false;
  bool cnf = false;

  int add_nt(const std::string& name);
};

// GenCfg -> plain productions (fresh nonterminals for regex operators).
Cfg lower_to_plain(const GenCfg& g);

// Chomsky normal form with tracked empty-word admission.
Cfg to_cnf(const Cfg& g);

// GenCfg -> CNF in one step.
Cfg lower(const GenCfg& g);

bool cyk_member(const Cfg& cnf, const Word& w);

// All derivable words of length <= maxlen, shortlex order.
std::vector<Word> grammar_enumerate(const Cfg& cnf, std::size_t maxlen);

// Reversal of the generated language (right sides reversed). Nonterminal
// names of the K{x,y} / W{x,y} / I{x,y} scheme get their letters swapped.
GenCfg reverse_grammar(GenCfg g);

// Text format: `start:` line, `terminals:` line, then one production line
// per nonterminal, alternatives separated by '|', '@' for the empty word.
std::string grammar_to_text(const Cfg& g);
std::string grammar_to_text(const GenCfg& g);  // requires alt-of-cat shape
Cfg grammar_from_text(const std::string& text);

}  // namespace splice
