#include "splice/system.hpp"

#include <algorithm>

#include "splice/error.hpp"

namespace splice {

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::linear: return "linear";
    case Kind::circular_paun: return "circular";
    case Kind::circular_head: return "circular-head";
    case Kind::circular_pixton: return "circular-pixton";
    case Kind::flat: return "flat";
  }
  return "?";
}

bool is_cssh(const SplicingSystem& s) {
  if (s.kind != Kind::circular_paun) return false;
  if (s.rules.empty()) return false;
  for (const LinearRule& r : s.rules) {
    if (r.site1().size() != 1 || r.site2().size() != 1) return false;
  }
  return true;
}

std::set<Sym> cssh_site_letters(const SplicingSystem& s) {
  std::set<Sym> out;
  for (const LinearRule& r : s.rules) {
    if (r.site1().size() == 1) out.insert(r.site1()[0]);
    if (r.site2().size() == 1) out.insert(r.site2()[0]);
  }
  return out;
}

std::optional<std::pair<int, int>> rule_positions(const LinearRule& r) {
  if (r.site1().size() != 1 || r.site2().size() != 1) return std::nullopt;
  bool first_left = r.u1.size() == 1;   // letter in u1 (else u2)
  bool second_left = r.u3.size() == 1;  // letter in u3 (else u4)
  if (first_left && second_left) return std::make_pair(1, 3);
  if (first_left && !second_left) return std::make_pair(1, 4);
  if (!first_left && second_left) return std::make_pair(2, 3);
  return std::make_pair(2, 4);
}

std::optional<std::pair<int, int>> cssh_positions(const SplicingSystem& s) {
  if (!is_cssh(s)) return std::nullopt;
  bool all13 = true, all24 = true, all23 = true;
  for (const LinearRule& r : s.rules) {
    auto p = rule_positions(r);
    if (!p) return std::nullopt;
    if (*p != std::make_pair(1, 3)) all13 = false;
    if (*p != std::make_pair(2, 4)) all24 = false;
    if (*p != std::make_pair(2, 3) && *p != std::make_pair(1, 4)) all23 = false;
  }
  if (all13) return std::make_pair(1, 3);
  if (all24) return std::make_pair(2, 4);
  if (all23) return std::make_pair(2, 3);
  return std::nullopt;
}

SplicingSystem normalize(SplicingSystem s) {
  if (s.normalized) return s;

  if (s.is_circular() ? s.initial_circ.empty() : s.initial_words.empty()) {
    throw_invalid("normalize: initial set is empty");
  }

  // The empty word never stays in an initial set; it is reported instead.
  if (s.initial_words.erase(Word()) > 0) s.dropped_words.insert(Word());
  if (s.initial_circ.erase(CircWord()) > 0) s.dropped_circ.insert(CircWord());

  if (s.kind == Kind::circular_paun) {
    std::set<LinearRule> closed(s.rules.begin(), s.rules.end());
    for (const LinearRule& r : s.rules) closed.insert(r.swapped());
    s.rules.assign(closed.begin(), closed.end());
    s.symmetric_closed = true;

    if (is_cssh(s)) {
      // Useless rules: a site letter that occurs in no initial word.
      std::set<Sym> present;
      for (const CircWord& c : s.initial_circ) {
        for (Sym a : c.rep()) present.insert(a);
      }
      std::vector<LinearRule> kept;
      for (const LinearRule& r : s.rules) {
        if (present.count(r.site1()[0]) && present.count(r.site2()[0])) {
          kept.push_back(r);
        } else {
          s.dropped_rules.push_back(r);
        }
      }
      s.rules = std::move(kept);

      // Initial words without any site occurrence are inert.
      std::set<Sym> sites = cssh_site_letters(s);
      std::set<CircWord> kept_words;
      for (const CircWord& c : s.initial_circ) {
        bool touches = std::any_of(c.rep().begin(), c.rep().end(),
                                   [&](Sym a) { return sites.count(a) > 0; });
        if (touches) {
          kept_words.insert(c);
        } else {
          s.dropped_circ.insert(c);
        }
      }
      s.initial_circ = std::move(kept_words);
    }
  }

  s.normalized = true;
  return s;
}

SplicingSystem cssh_reverse(const SplicingSystem& s) {
  auto pos = cssh_positions(s);
  if (!pos || (*pos != std::make_pair(1, 3) && *pos != std::make_pair(2, 4))) {
    throw_unsupported("cssh_reverse: system is not a (1,3)- or (2,4)-CSSH system");
  }
  SplicingSystem out = s;
  out.initial_circ.clear();
  for (const CircWord& c : s.initial_circ) out.initial_circ.insert(reverse_circ(c));
  out.dropped_circ.clear();
  for (const CircWord& c : s.dropped_circ) out.dropped_circ.insert(reverse_circ(c));
  out.rules.clear();
  for (const LinearRule& r : s.rules) {
    // a#1$b#1 <-> 1#a$1#b
    if (*pos == std::make_pair(1, 3)) {
      out.rules.push_back({Word(), r.u1, Word(), r.u3});
    } else {
      out.rules.push_back({r.u2, Word(), r.u4, Word()});
    }
  }
  std::sort(out.rules.begin(), out.rules.end());
  out.rules.erase(std::unique(out.rules.begin(), out.rules.end()), out.rules.end());
  return out;
}

}  // namespace splice
