#include <string_view>

#include "splice/engine.hpp"
#include "splice/error.hpp"

namespace splice {

namespace {

// Start positions of all (possibly overlapping) occurrences of `pat` in `w`;
// the empty pattern occurs at every position 0..|w|.
std::vector<std::size_t> occurrences(const Word& w, const Word& pat) {
  std::vector<std::size_t> out;
  if (pat.empty()) {
    for (std::size_t i = 0; i <= w.size(); ++i) out.push_back(i);
    return out;
  }
  for (std::size_t i = 0; i + pat.size() <= w.size(); ++i) {
    if (std::string_view(w).substr(i, pat.size()) == pat) out.push_back(i);
  }
  return out;
}

bool starts_with(const Word& w, const Word& p) {
  return w.size() >= p.size() && std::string_view(w).substr(0, p.size()) == p;
}

bool ends_with(const Word& w, const Word& s) {
  return w.size() >= s.size() && std::string_view(w).substr(w.size() - s.size()) == s;
}

}  // namespace

std::set<std::pair<Word, Word>> linear_step(const LinearRule& r, const Word& x, const Word& y) {
  std::set<std::pair<Word, Word>> out;
  const Word site1 = r.site1();
  const Word site2 = r.site2();
  for (std::size_t i : occurrences(x, site1)) {
    Word x1 = x.substr(0, i);
    Word x2 = x.substr(i + site1.size());
    for (std::size_t j : occurrences(y, site2)) {
      Word y1 = y.substr(0, j);
      Word y2 = y.substr(j + site2.size());
      out.emplace(x1 + r.u1 + r.u4 + y2, y1 + r.u3 + r.u2 + x2);
    }
  }
  return out;
}

std::set<Word> flat_step(const FlatRule& r, const Word& u, const Word& v) {
  std::set<Word> out;
  // v must be gamma z delta without overlap
  if (v.size() < r.gamma.size() + r.delta.size()) return out;
  if (!starts_with(v, r.gamma) || !ends_with(v, r.delta)) return out;
  // cut positions of u: left part ends with alpha, right part starts with beta
  for (std::size_t i = 0; i <= u.size(); ++i) {
    std::string_view left = std::string_view(u).substr(0, i);
    std::string_view right = std::string_view(u).substr(i);
    if (left.size() < r.alpha.size() || right.size() < r.beta.size()) continue;
    if (left.substr(left.size() - r.alpha.size()) != r.alpha) continue;
    if (right.substr(0, r.beta.size()) != r.beta) continue;
    out.insert(Word(left) + v + Word(right));
  }
  return out;
}

std::set<CircWord> circular_step(const LinearRule& r, const CircWord& w1, const CircWord& w2) {
  std::set<CircWord> out;
  for (const Word& r1 : rotations(w1.rep())) {
    // r1 = u2 x u1
    if (r1.size() < r.u1.size() + r.u2.size()) continue;
    if (!starts_with(r1, r.u2) || !ends_with(r1, r.u1)) continue;
    for (const Word& r2 : rotations(w2.rep())) {
      // r2 = u4 y u3
      if (r2.size() < r.u3.size() + r.u4.size()) continue;
      if (!starts_with(r2, r.u4) || !ends_with(r2, r.u3)) continue;
      out.insert(CircWord::of(r1 + r2));
    }
  }
  return out;
}

std::set<std::pair<CircWord, CircWord>> self_splice_step(const LinearRule& r, const CircWord& w) {
  std::set<std::pair<CircWord, CircWord>> out;
  const Word site1 = r.site1();
  const Word site2 = r.site2();
  for (const Word& rot : rotations(w.rep())) {
    // rot = x u1u2 y u3u4
    if (rot.size() < site1.size() + site2.size()) continue;
    if (!ends_with(rot, site2)) continue;
    Word head = rot.substr(0, rot.size() - site2.size());  // x u1u2 y
    for (std::size_t i : occurrences(head, site1)) {
      Word x = head.substr(0, i);
      Word y = head.substr(i + site1.size());
      out.emplace(CircWord::of(r.u4 + x + r.u1), CircWord::of(r.u2 + y + r.u3));
    }
  }
  return out;
}

std::set<CircWord> head_circ_step(const HeadTriple& t1, const HeadTriple& t2, const CircWord& w1,
                                  const CircWord& w2) {
  if (t1.x != t2.x) throw_invalid("head_circ_step: crossings differ");
  std::set<CircWord> out;
  const Word pxq = t1.p + t1.x + t1.q;
  const Word uxv = t2.p + t2.x + t2.q;
  for (const Word& r1 : rotations(w1.rep())) {
    // r1 = y p x q
    if (r1.size() < pxq.size() || !ends_with(r1, pxq)) continue;
    Word y = r1.substr(0, r1.size() - pxq.size());
    for (const Word& r2 : rotations(w2.rep())) {
      // r2 = z u x v
      if (r2.size() < uxv.size() || !ends_with(r2, uxv)) continue;
      Word z = r2.substr(0, r2.size() - uxv.size());
      out.insert(CircWord::of(y + t1.p + t1.x + t2.q + z + t2.p + t2.x + t1.q));
    }
  }
  return out;
}

std::set<CircWord> pixton_circ_step(const PixtonRule& r, const CircWord& w1, const CircWord& w2) {
  std::set<CircWord> out;
  for (const Word& r1 : rotations(w1.rep())) {
    // r1 = alpha e
    if (r1.size() < r.alpha.size() || !starts_with(r1, r.alpha)) continue;
    Word e = r1.substr(r.alpha.size());
    for (const Word& r2 : rotations(w2.rep())) {
      // r2 = alpha' e'
      if (r2.size() < r.alpha_prime.size() || !starts_with(r2, r.alpha_prime)) continue;
      Word ep = r2.substr(r.alpha_prime.size());
      out.insert(CircWord::of(e + r.beta + ep + r.beta_prime));
    }
  }
  return out;
}

}  // namespace splice
