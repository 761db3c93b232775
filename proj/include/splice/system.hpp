#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "splice/word.hpp"

namespace splice {

enum class Kind { linear, circular_paun, circular_head, circular_pixton, flat };

std::string kind_name(Kind k);

// Rule u1 # u2 $ u3 # u4 with sites u1u2 and u3u4. Shared between linear
// and circular Paun systems.
struct LinearRule {
  Word u1, u2, u3, u4;

  Word site1() const { return u1 + u2; }
  Word site2() const { return u3 + u4; }
  LinearRule swapped() const { return {u3, u4, u1, u2}; }

  friend auto operator<=>(const LinearRule&, const LinearRule&) = default;
};

// Flat rule with handles (alpha, beta, gamma, delta): inserts gamma-z-delta
// shaped words between an alpha and a beta.
struct FlatRule {
  Word alpha, beta, gamma, delta;

  bool alphabetic() const {
    return alpha.size() <= 1 && beta.size() <= 1 && gamma.size() <= 1 && delta.size() <= 1;
  }

  friend auto operator<=>(const FlatRule&, const FlatRule&) = default;
};

// Head pattern triple (p, x, q); x is the crossing. Two triples compose
// when their crossings are equal.
struct HeadTriple {
  Word p, x, q;

  friend auto operator<=>(const HeadTriple&, const HeadTriple&) = default;
};

// Pixton rule r = (alpha, alpha'; beta) together with the paired rule
// r̄ = (alpha', alpha; beta'); beta' must be given explicitly.
struct PixtonRule {
  Word alpha, alpha_prime, beta, beta_prime;

  friend auto operator<=>(const PixtonRule&, const PixtonRule&) = default;
};

struct SplicingSystem {
  Kind kind = Kind::flat;
  std::string alphabet;  // sorted, unique

  std::set<Word> initial_words;      // linear and flat kinds
  std::set<CircWord> initial_circ;   // circular kinds

  std::vector<LinearRule> rules;        // linear, circular_paun
  std::vector<FlatRule> flat_rules;     // flat
  std::vector<HeadTriple> head_triples; // circular_head
  std::vector<PixtonRule> pixton_rules; // circular_pixton

  bool symmetric_closed = false;  // circular_paun only
  bool self_splicing = false;     // circular_paun only
  bool one_splicing = false;      // linear only
  bool normalized = false;

  // Inert parts removed by normalize(), still part of the language.
  std::set<Word> dropped_words;
  std::set<CircWord> dropped_circ;
  std::vector<LinearRule> dropped_rules;

  bool is_circular() const {
    return kind == Kind::circular_paun || kind == Kind::circular_head ||
           kind == Kind::circular_pixton;
  }
};

// True when every rule site of a circular Paun system is a single letter.
bool is_cssh(const SplicingSystem& s);

// Site letters of a CSSH system.
std::set<Sym> cssh_site_letters(const SplicingSystem& s);

// Rule position classes for CSSH rules: (1,3), (2,4), (2,3), (1,4).
std::optional<std::pair<int, int>> rule_positions(const LinearRule& r);

// Detected system-level positions: (1,3), (2,4) or (2,3); (1,4) rules count
// as (2,3) via symmetry. nullopt for mixed systems.
std::optional<std::pair<int, int>> cssh_positions(const SplicingSystem& s);

// Symmetric closure for circular Paun rules, empty-word removal from the
// initial set, and for CSSH systems removal of useless rules and of initial
// words with no site occurrence (reported in the dropped_* fields).
SplicingSystem normalize(SplicingSystem s);

// The reversal bijection on CSSH systems: initial words reversed, rule
// positions swapped between (1,3) and (2,4). The generated language is the
// reversal of the input's language.
SplicingSystem cssh_reverse(const SplicingSystem& s);

}  // namespace splice
