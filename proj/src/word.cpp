#include "splice/word.hpp"

#include <algorithm>

namespace splice {

Word reversed(const Word& w) { return Word(w.rbegin(), w.rend()); }

std::set<Word> reverse_lang(const std::set<Word>& lang) {
  std::set<Word> out;
  for (const Word& w : lang) out.insert(reversed(w));
  return out;
}

std::vector<Word> rotations(const Word& w) {
  std::vector<Word> out;
  if (w.empty()) {
    out.push_back(w);
    return out;
  }
  std::set<Word> seen;
  for (std::size_t i = 0; i < w.size(); ++i) {
    Word r = w.substr(i) + w.substr(0, i);
    if (seen.insert(r).second) out.push_back(std::move(r));
  }
  return out;
}

std::size_t least_rotation_index(std::string_view w) {
  const std::size_t n = w.size();
  if (n == 0) return 0;
  std::string d;
  d.reserve(2 * n);
  d.append(w).append(w);
  std::size_t i = 0, j = 1;
  while (j < n) {
    std::size_t k = 0;
    while (k < n && d[i + k] == d[j + k]) ++k;
    if (k >= n) break;  // w is a power of a shorter word
    if (d[i + k] < d[j + k]) {
      j += k + 1;
    } else {
      i = std::max(i + k + 1, j);
      j = i + 1;
    }
  }
  return i;
}

CircWord CircWord::of(std::string_view w) {
  CircWord c;
  std::size_t i = least_rotation_index(w);
  c.rep_ = Word(w.substr(i)) + Word(w.substr(0, i));
  return c;
}

CircWord canonicalize(std::string_view w) { return CircWord::of(w); }

std::set<Word> circ_factors(const Word& w) {
  std::set<Word> out;
  for (const Word& r : rotations(w)) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      for (std::size_t len = 1; i + len <= r.size(); ++len) {
        out.insert(r.substr(i, len));
      }
    }
  }
  return out;
}

CircWord reverse_circ(const CircWord& c) { return CircWord::of(reversed(c.rep())); }

std::set<Word> linearize(const std::set<CircWord>& classes) {
  std::set<Word> out;
  for (const CircWord& c : classes) {
    for (Word& r : rotations(c.rep())) out.insert(std::move(r));
  }
  return out;
}

std::set<CircWord> circularize(const std::set<Word>& words) {
  std::set<CircWord> out;
  for (const Word& w : words) out.insert(CircWord::of(w));
  return out;
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::vector<Word> sorted_shortlex(const std::set<Word>& words) {
  std::vector<Word> out(words.begin(), words.end());
  std::stable_sort(out.begin(), out.end(), shortlex_less);
  return out;
}

}  // namespace splice
