#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "splice/word.hpp"

namespace splice {

// Nondeterministic automaton with optional epsilon moves. Used as an
// intermediate form; language questions go through determinize().
struct Nfa {
  std::string alphabet;  // sorted, unique
  int num_states = 0;
  std::vector<std::map<Sym, std::set<int>>> delta;
  std::vector<std::set<int>> eps;
  std::set<int> initials;
  std::set<int> finals;

  int add_state();
  void add_edge(int from, Sym a, int to);
  void add_eps(int from, int to);
};

// Complete deterministic automaton: delta is total, a sink is explicit.
struct Dfa {
  std::string alphabet;  // sorted, unique
  int num_states = 0;
  std::vector<std::vector<int>> delta;  // [state][sym index]
  int initial = 0;
  std::vector<bool> finals;

  int sym_index(Sym a) const;
  int step(int s, Sym a) const;
  int run(int s, std::string_view w) const;
  bool accepts(std::string_view w) const;

  bool operator==(const Dfa&) const = default;
};

Dfa determinize(const Nfa& n);

// Minimal complete automaton with canonical state numbering (breadth-first
// from the initial state in alphabet order), so equal languages give equal
// structs.
Dfa minimize(const Dfa& d);

// Regular expressions: union '+', concatenation, postfix '*' and '+',
// parentheses, '_' for the empty word. A postfix '+' is recognized when it
// is not followed by the start of another term. If `alphabet` is given,
// all symbols of the expression must belong to it and the automaton is
// built over it; otherwise the alphabet is the set of symbols that occur.
Dfa regex_to_dfa(std::string_view expr,
                 std::optional<std::string> alphabet = std::nullopt);

Dfa complement(const Dfa& d);
Dfa intersect(const Dfa& a, const Dfa& b);
Dfa unite(const Dfa& a, const Dfa& b);
Dfa difference(const Dfa& a, const Dfa& b);

bool is_empty(const Dfa& d);
bool dfa_equal(const Dfa& a, const Dfa& b);

// Shortest accepted word (shortlex); nullopt when the language is empty.
std::optional<Word> shortest_word(const Dfa& d);

// (finite?, number of words when finite)
std::pair<bool, std::size_t> finiteness(const Dfa& d);

// All accepted words of length <= maxlen, shortlex order.
std::vector<Word> enumerate_dfa(const Dfa& d, std::size_t maxlen);

// Accepts exactly {yx : xy in L(d)}.
Nfa cyclic_closure(const Dfa& d);

std::string to_dot(const Dfa& d);
std::string to_dot(const Nfa& n);

// Unavoidability of a finite factor set. When unavoidable, k0 is the
// length of the longest avoiding word. Otherwise prefix.cycle^k avoids Y
// for every k, with cycle nonempty.
struct UnavoidResult {
  bool unavoidable = false;
  std::size_t k0 = 0;
  Word prefix;
  Word cycle;
};
UnavoidResult is_unavoidable(const std::set<Word>& y, const std::string& alphabet);

// Constants of a regular language (rectangular context set). Words whose
// context set is empty count as constants but carry the vacuous flag.
struct ConstantResult {
  bool constant = false;
  bool vacuous = false;
};
ConstantResult is_constant(const Dfa& d, const Word& w);

// Shortest non-vacuous constant, searched over the transition monoid in
// shortlex word order; nullopt when none exists.
std::optional<Word> find_constant(const Dfa& d);

// Eventually periodic normal form of a unary regular language:
// for n >= n0, a^n is accepted iff (n mod period) is in residues.
struct UnarySpectrum {
  std::set<std::size_t> explicit_members;  // accepted lengths below n0
  std::size_t n0 = 0;
  std::size_t period = 1;
  std::set<std::size_t> residues;

  bool contains(std::size_t n) const;
};

UnarySpectrum unary_spectrum(const Dfa& d);
Dfa spectrum_to_dfa(const UnarySpectrum& s, Sym letter);

}  // namespace splice
