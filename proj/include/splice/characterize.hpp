#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "splice/automata.hpp"
#include "splice/system.hpp"

namespace splice {

// ---------------------------------------------------------------------------
// Marked systems: I = A = SITES(R), viewed as an undirected letter graph
// with self-loops.

struct MarkedSystem {
  std::string letters;                   // sorted, unique
  std::set<std::pair<Sym, Sym>> edges;   // stored with a <= b

  void add_edge(Sym a, Sym b);
  bool has_edge(Sym a, Sym b) const;
  bool has_loop(Sym a) const { return has_edge(a, a); }

  bool operator==(const MarkedSystem&) const = default;
};

// A subset J is transitive when its induced graph is connected and is not a
// loop-free singleton.
bool is_transitive_subset(const MarkedSystem& m, const std::set<Sym>& j);

// Connected components as subsystems; loop-free singletons come back too
// (they are the non-transitive components).
std::vector<MarkedSystem> marked_decompose(const MarkedSystem& m);

// Chain-vertex distances: d(a,a) = 1, adjacent letters have d = 2.
// delta = global diameter, delta_local = max diameter over transitive
// induced subsystems. Computed per component and maximized.
struct Diameters {
  std::size_t delta = 0;
  std::size_t delta_local = 0;
};
Diameters marked_diameters(const MarkedSystem& m);

// Regular iff no component has local diameter > 3, equivalently iff the
// loop-free graph has no induced P4. The certificate is the path when not.
struct MarkedRegularity {
  bool regular = false;
  std::vector<Sym> p4;  // path order, only when !regular
};
MarkedRegularity marked_is_regular(const MarkedSystem& m);

// Automaton for the full linearization of the generated language:
// I plus, for every transitive J, the words over J containing every letter
// of J. Requires marked_is_regular(m).
Dfa marked_automaton(const MarkedSystem& m);

// From the marked system used on a circular system or as built here: the
// marked system detected in a normalized (1,3)-CSSH system, if any.
std::optional<MarkedSystem> as_marked(const SplicingSystem& s);

// Extended marked systems: every initial word carries exactly one site
// letter occurrence and site letters of distinct initial words differ.
// decoration maps each marked letter to its decorated block (the rotation
// of its initial word ending with the letter). The circular language of the
// input is the circularization of the decorated linearization of the
// marked system's language.
struct ExtendedReduction {
  MarkedSystem marked;
  std::map<Sym, Word> decoration;
};
ExtendedReduction extended_reduce(const SplicingSystem& s);
Word decorate(const std::map<Sym, Word>& decoration, const Word& w);

// ---------------------------------------------------------------------------
// Pure unitary grammars and complete systems.

// Iterated insertion closure of Y cut at maxlen (exact: insertions grow).
std::set<Word> unitary_closure(const std::set<Word>& y, std::size_t maxlen);
bool unitary_member(const std::set<Word>& y, const Word& w);

struct CompleteCheck {
  bool complete = false;
  std::pair<int, int> positions{0, 0};
};
CompleteCheck complete_check(const SplicingSystem& s);

struct CompleteRegularity {
  bool regular = false;
  UnavoidResult certificate;
};
// Only (1,3)-complete systems directly; (2,4) goes through the reversal.
CompleteRegularity complete_is_regular(const SplicingSystem& s);

// ---------------------------------------------------------------------------
// Unary systems.

// Closed form of Prop.-style unary splicing languages: L1 below n plus the
// semigroup generated by G, where min G = n = p*r and the residues of G
// mod n are {p*k : 0 <= k < r}.
struct UnaryForm {
  std::set<std::size_t> l1;
  std::size_t n = 0, p = 0, r = 0;
  std::set<std::size_t> g;

  bool contains(std::size_t len) const;
  std::string text() const;
};

struct UnaryFinite {
  std::set<std::size_t> lengths;
};

std::variant<UnaryForm, UnaryFinite> unary_closed_form(const SplicingSystem& s);

struct UnaryDecision {
  bool generated = false;
  std::optional<UnaryForm> form;      // when generated and infinite
  std::optional<UnaryFinite> finite;  // when generated and finite
  std::string refutation;             // when not generated
};
UnaryDecision unary_is_generated(const UnarySpectrum& spec);

Dfa unary_form_to_dfa(const UnaryForm& f, Sym letter);

std::string to_dot(const MarkedSystem& m);

}  // namespace splice
