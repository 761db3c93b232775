#pragma once

#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace splice {

// One symbol per printable character; a word is a plain character string.
// The empty string is the empty word.
using Sym = char;
using Word = std::string;

// Reversal of a word, a language, and length-ordered output helpers.
Word reversed(const Word& w);
std::set<Word> reverse_lang(const std::set<Word>& lang);

// All rotations of w as distinct strings (a unary word has one rotation).
std::vector<Word> rotations(const Word& w);

// Index of the lexicographically least rotation (Booth's algorithm).
std::size_t least_rotation_index(std::string_view w);

// A circular word is a conjugacy class, stored as its least rotation.
class CircWord {
 public:
  CircWord() = default;  // the empty class

  static CircWord of(std::string_view w);

  const Word& rep() const { return rep_; }
  std::size_t size() const { return rep_.size(); }
  bool empty() const { return rep_.empty(); }

  friend auto operator<=>(const CircWord&, const CircWord&) = default;

 private:
  Word rep_;
};

CircWord canonicalize(std::string_view w);

// Fact_c(w): every nonempty factor of every rotation of w.
std::set<Word> circ_factors(const Word& w);

CircWord reverse_circ(const CircWord& c);

// Full linearization of a set of classes: all rotations of all reps.
std::set<Word> linearize(const std::set<CircWord>& classes);

// Circularization of a set of words.
std::set<CircWord> circularize(const std::set<Word>& words);

// Length-then-lex order, used for all user-facing word listings.
bool shortlex_less(const Word& a, const Word& b);
std::vector<Word> sorted_shortlex(const std::set<Word>& words);

}  // namespace splice
