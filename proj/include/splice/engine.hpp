#pragma once

#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "splice/system.hpp"

namespace splice {

// One application of a Paun rule to linear words: for every factorization
// x = x1 u1u2 x2 and y = y1 u3u4 y2, the pair (x1 u1 u4 y2, y1 u3 u2 x2).
std::set<std::pair<Word, Word>> linear_step(const LinearRule& r, const Word& x, const Word& y);

// Flat production: u = x alpha . beta y, v = gamma z delta, result
// x alpha gamma z delta beta y. One output per cut position of u.
std::set<Word> flat_step(const FlatRule& r, const Word& u, const Word& v);

// Circular Paun step: rotations w1 = u2 x u1 and w2 = u4 y u3 give the
// class of u2 x u1 u4 y u3. Rotations shorter than a site never match.
std::set<CircWord> circular_step(const LinearRule& r, const CircWord& w1, const CircWord& w2);

// Self-splicing: a linearization w = x u1u2 y u3u4 splits into the classes
// of u4 x u1 and u2 y u3.
std::set<std::pair<CircWord, CircWord>> self_splice_step(const LinearRule& r, const CircWord& w);

// Head circular step for triples with equal crossings: rotations
// w1 = y p x q, w2 = z u x v give the class of y p x v z u x q.
std::set<CircWord> head_circ_step(const HeadTriple& t1, const HeadTriple& t2, const CircWord& w1,
                                  const CircWord& w2);

// Pixton circular step: rotations w1 = alpha e, w2 = alpha' e' give the
// class of e beta e' beta'.
std::set<CircWord> pixton_circ_step(const PixtonRule& r, const CircWord& w1, const CircWord& w2);

struct GenerationBudget {
  std::size_t max_rounds = 0;
  std::size_t work_len = 0;
  std::size_t report_len = 0;
};

struct GenerationResult {
  bool circular = false;
  std::set<Word> words;  // canonical reps for circular kinds
  std::size_t rounds_used = 0;
  bool saturated = false;
  // True when saturation plus a non-shrinking step kind make the report
  // provably equal to the language cut at report_len. Linear splicing,
  // self-splicing and Pixton steps can shrink, so there this stays false
  // and saturation is only a heuristic signal.
  bool exact = false;

  std::set<CircWord> circ_words() const;
};

// Budgeted iterated splicing: levels sigma^i cut at work_len, reported at
// report_len. The system must be normalized and the budget positive.
GenerationResult generate(const SplicingSystem& s, const GenerationBudget& b);

}  // namespace splice
