#include <algorithm>
#include <map>

#include "splice/characterize.hpp"
#include "splice/error.hpp"

namespace splice {

std::set<Word> unitary_closure(const std::set<Word>& y, std::size_t maxlen) {
  for (const Word& w : y) {
    if (w.empty()) throw_invalid("unitary_closure: empty word in Y");
  }
  std::set<Word> closure{Word()};
  std::vector<Word> frontier{Word()};
  while (!frontier.empty()) {
    std::vector<Word> next;
    for (const Word& z : frontier) {
      for (const Word& ins : y) {
        if (z.size() + ins.size() > maxlen) continue;
        for (std::size_t i = 0; i <= z.size(); ++i) {
          Word w = z.substr(0, i) + ins + z.substr(i);
          if (closure.insert(w).second) next.push_back(std::move(w));
        }
      }
    }
    frontier = std::move(next);
  }
  return closure;
}

bool unitary_member(const std::set<Word>& y, const Word& w) {
  for (const Word& v : y) {
    if (v.empty()) throw_invalid("unitary_member: empty word in Y");
  }
  std::map<Word, bool> memo;
  auto member = [&](auto&& self, const Word& z) -> bool {
    if (z.empty()) return true;
    auto it = memo.find(z);
    if (it != memo.end()) return it->second;
    memo[z] = false;  // guards against rework; lengths strictly decrease
    bool ok = false;
    for (const Word& ins : y) {
      if (ins.size() > z.size()) continue;
      for (std::size_t i = 0; !ok && i + ins.size() <= z.size(); ++i) {
        if (std::string_view(z).substr(i, ins.size()) != ins) continue;
        ok = self(self, z.substr(0, i) + z.substr(i + ins.size()));
      }
      if (ok) break;
    }
    memo[z] = ok;
    return ok;
  };
  return member(member, w);
}

CompleteCheck complete_check(const SplicingSystem& s_in) {
  SplicingSystem s = normalize(s_in);
  CompleteCheck out;
  auto pos = cssh_positions(s);
  if (!pos) return out;
  out.positions = *pos;

  // Letter pairs of the rules at the detected positions. The symmetric
  // closure makes the relation symmetric, so totality is checked on
  // unordered pairs.
  std::set<std::pair<Sym, Sym>> pairs;
  auto add = [&](Sym a, Sym b) {
    if (a > b) std::swap(a, b);
    pairs.insert({a, b});
  };
  for (const LinearRule& r : s.rules) {
    auto rp = rule_positions(r);
    if (!rp) return out;
    Sym a = r.site1()[0];
    Sym b = r.site2()[0];
    add(a, b);
  }
  for (Sym a : s.alphabet) {
    for (Sym b : s.alphabet) {
      if (a > b) continue;
      if (!pairs.count({a, b})) return out;
    }
  }
  out.complete = true;
  return out;
}

CompleteRegularity complete_is_regular(const SplicingSystem& s_in) {
  SplicingSystem s = normalize(s_in);
  CompleteCheck cc = complete_check(s);
  if (!cc.complete) throw_invalid("complete_is_regular: system is not complete");
  if (cc.positions == std::make_pair(2, 4)) {
    s = cssh_reverse(s);
    cc = complete_check(s);
  }
  if (cc.positions != std::make_pair(1, 3)) {
    throw_unsupported("complete_is_regular: only (1,3)- and (2,4)-complete systems");
  }
  std::set<Word> y = linearize(s.initial_circ);
  CompleteRegularity out;
  out.certificate = is_unavoidable(y, s.alphabet);
  out.regular = out.certificate.unavoidable;
  return out;
}

}  // namespace splice
