#include "splice/compile.hpp"

#include <algorithm>
#include <map>

#include "splice/error.hpp"

namespace splice {

bool check_alphabetic(const SplicingSystem& s) {
  if (s.kind == Kind::flat) {
    return std::all_of(s.flat_rules.begin(), s.flat_rules.end(),
                       [](const FlatRule& r) { return r.alphabetic(); });
  }
  if (s.kind == Kind::circular_paun) {
    return std::all_of(s.rules.begin(), s.rules.end(), [](const LinearRule& r) {
      return r.u1.size() <= 1 && r.u2.size() <= 1 && r.u3.size() <= 1 && r.u4.size() <= 1;
    });
  }
  throw_invalid("check_alphabetic: kind must be flat or circular");
}

namespace {

constexpr int kNone = -1;  // empty handle

int handle_of(const Word& w) { return w.empty() ? kNone : static_cast<int>(w[0]); }

struct AlphaRule {
  int alpha, beta, gamma, delta;
};

// An operand of a concatenation or insertion: either a single-letter
// initial word or a boundary class (first letter, last letter).
struct Operand {
  bool letter = false;
  Sym c = 0;                     // when letter
  std::pair<Sym, Sym> cls = {};  // when class

  Sym first() const { return letter ? c : cls.first; }
  Sym last() const { return letter ? c : cls.second; }

  auto operator<=>(const Operand&) const = default;
};

// A single-letter word c fits the gamma/delta constraints iff they do not
// force two distinct positions into it.
bool letter_fits(Sym c, int gamma, int delta) {
  if (gamma != kNone && gamma != c) return false;
  if (delta != kNone && delta != c) return false;
  return gamma == kNone || delta == kNone;
}

bool class_fits(std::pair<Sym, Sym> cls, int gamma, int delta) {
  if (gamma != kNone && cls.first != gamma) return false;
  if (delta != kNone && cls.second != delta) return false;
  return true;
}

struct ConcatStructure {
  std::vector<AlphaRule> rules;
  std::set<Sym> letters;  // single-letter initial words
  std::map<std::pair<Sym, Sym>, std::set<Word>> seeds;
  std::set<std::pair<Sym, Sym>> classes;  // inhabited length >= 2 classes
  // production: result class derives left operand followed by right operand
  std::set<std::tuple<std::pair<Sym, Sym>, Operand, Operand>> prods;
};

ConcatStructure build_concat(const SplicingSystem& s) {
  ConcatStructure st;
  for (const FlatRule& r : s.flat_rules) {
    st.rules.push_back(
        {handle_of(r.alpha), handle_of(r.beta), handle_of(r.gamma), handle_of(r.delta)});
  }
  for (const Word& w : s.initial_words) {
    if (w.size() == 1) {
      st.letters.insert(w[0]);
    } else if (w.size() >= 2) {
      std::pair<Sym, Sym> cls{w.front(), w.back()};
      st.seeds[cls].insert(w);
      st.classes.insert(cls);
    }
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (const AlphaRule& r : st.rules) {
      // insertable operands for this rule
      std::vector<Operand> vs;
      for (const auto& cls : st.classes) {
        if (class_fits(cls, r.gamma, r.delta)) vs.push_back({false, 0, cls});
      }
      for (Sym c : st.letters) {
        if (letter_fits(c, r.gamma, r.delta)) vs.push_back({true, c, {}});
      }

      auto emit = [&](std::pair<Sym, Sym> result, const Operand& l, const Operand& rgt) {
        if (st.prods.insert({result, l, rgt}).second) changed = true;
        if (st.classes.insert(result).second) changed = true;
      };

      if (r.alpha == kNone) {
        // prepend: result = v . u, u starts with beta
        for (const auto& cls : st.classes) {
          if (r.beta != kNone && cls.first != r.beta) continue;
          for (const Operand& v : vs) emit({v.first(), cls.second}, v, {false, 0, cls});
        }
        for (Sym c : st.letters) {
          if (r.beta != kNone && c != r.beta) continue;
          for (const Operand& v : vs) emit({v.first(), c}, v, {true, c, {}});
        }
      }
      if (r.beta == kNone) {
        // append: result = u . v, u ends with alpha
        for (const auto& cls : st.classes) {
          if (r.alpha != kNone && cls.second != r.alpha) continue;
          for (const Operand& v : vs) emit({cls.first, v.last()}, {false, 0, cls}, v);
        }
        for (Sym c : st.letters) {
          if (r.alpha != kNone && c != r.alpha) continue;
          for (const Operand& v : vs) emit({c, v.last()}, {true, c, {}}, v);
        }
      }
    }
  }
  return st;
}

std::string cls_name(char prefix, std::pair<Sym, Sym> cls) {
  return std::string(1, prefix) + "{" + std::string(1, cls.first) + "," +
         std::string(1, cls.second) + "}";
}

GenCfg structure_to_grammar(const SplicingSystem& s, const ConcatStructure& st, char prefix) {
  GenCfg g;
  g.terminals = s.alphabet;
  g.start = g.add_nt("S");
  std::map<std::pair<Sym, Sym>, int> ids;
  for (const auto& cls : st.classes) ids[cls] = g.add_nt(cls_name(prefix, cls));

  std::vector<Rx> start_alts;
  for (const auto& cls : st.classes) start_alts.push_back(Rx::s(ids[cls]));
  for (Sym c : st.letters) start_alts.push_back(Rx::s(term_sym(c)));
  g.prods[g.start] = Rx::alt(std::move(start_alts));

  auto operand_rx = [&](const Operand& o) {
    return o.letter ? Rx::s(term_sym(o.c)) : Rx::s(ids.at(o.cls));
  };

  for (const auto& cls : st.classes) {
    std::vector<Rx> alts;
    if (auto it = st.seeds.find(cls); it != st.seeds.end()) {
      for (const Word& w : it->second) alts.push_back(Rx::word(w));
    }
    for (const auto& [result, l, r] : st.prods) {
      if (result != cls) continue;
      alts.push_back(Rx::cat({operand_rx(l), operand_rx(r)}));
    }
    g.prods[ids[cls]] = Rx::alt(std::move(alts));
  }
  return g;
}

}  // namespace

GenCfg concat_grammar(const SplicingSystem& s) {
  if (s.kind != Kind::flat) throw_invalid("concat_grammar: flat system expected");
  if (!check_alphabetic(s)) throw_unsupported("concat_grammar: system is not alphabetic");
  return structure_to_grammar(s, build_concat(s), 'K');
}

GenCfg insert_grammar(const GenCfg& k, const SplicingSystem& s) {
  if (s.kind != Kind::flat) throw_invalid("insert_grammar: flat system expected");
  if (!check_alphabetic(s)) throw_unsupported("insert_grammar: system is not alphabetic");
  ConcatStructure st = build_concat(s);
  if (!(k == structure_to_grammar(s, st, 'K'))) {
    throw_invalid("insert_grammar: grammar does not match concat_grammar of the system");
  }

  GenCfg g;
  g.terminals = s.alphabet;
  g.start = g.add_nt("S");
  std::map<std::pair<Sym, Sym>, int> wid;
  for (const auto& cls : st.classes) wid[cls] = g.add_nt(cls_name('W', cls));

  // Insertion slots, discovered from base adjacencies and closed under the
  // adjacencies that insertions themselves create.
  std::map<std::pair<Sym, Sym>, int> iid;
  std::vector<std::pair<Sym, Sym>> slot_work;
  auto slot = [&](Sym x, Sym y) {
    std::pair<Sym, Sym> p{x, y};
    auto it = iid.find(p);
    if (it != iid.end()) return it->second;
    int id = g.add_nt(cls_name('I', p));
    iid[p] = id;
    slot_work.push_back(p);
    return id;
  };

  // W productions mirror the K structure with slots at every adjacency.
  for (const auto& cls : st.classes) {
    std::vector<Rx> alts;
    if (auto it = st.seeds.find(cls); it != st.seeds.end()) {
      for (const Word& w : it->second) {
        std::vector<Rx> parts;
        for (std::size_t i = 0; i < w.size(); ++i) {
          if (i) parts.push_back(Rx::s(slot(w[i - 1], w[i])));
          parts.push_back(Rx::s(term_sym(w[i])));
        }
        alts.push_back(Rx::cat(std::move(parts)));
      }
    }
    auto operand_rx = [&](const Operand& o) {
      return o.letter ? Rx::s(term_sym(o.c)) : Rx::s(wid.at(o.cls));
    };
    for (const auto& [result, l, r] : st.prods) {
      if (result != cls) continue;
      alts.push_back(
          Rx::cat({operand_rx(l), Rx::s(slot(l.last(), r.first())), operand_rx(r)}));
    }
    g.prods[wid[cls]] = Rx::alt(std::move(alts));
  }

  // Slot productions; processing may discover further slots.
  std::set<std::pair<Sym, Sym>> done;
  while (!slot_work.empty()) {
    auto [x, y] = slot_work.back();
    slot_work.pop_back();
    if (!done.insert({x, y}).second) continue;
    std::vector<Rx> alts{Rx::eps()};
    std::set<std::vector<int>> seen;  // dedupe across rules
    for (const AlphaRule& r : st.rules) {
      if (r.alpha != kNone && r.alpha != x) continue;
      if (r.beta != kNone && r.beta != y) continue;
      for (const auto& cls : st.classes) {
        if (!class_fits(cls, r.gamma, r.delta)) continue;
        int left = slot(x, cls.first);
        int right = slot(cls.second, y);
        if (seen.insert({left, wid.at(cls), right}).second) {
          alts.push_back(Rx::cat({Rx::s(left), Rx::s(wid.at(cls)), Rx::s(right)}));
        }
      }
      for (Sym c : st.letters) {
        if (!letter_fits(c, r.gamma, r.delta)) continue;
        int left = slot(x, c);
        int right = slot(c, y);
        if (seen.insert({left, term_sym(c), right}).second) {
          alts.push_back(Rx::cat({Rx::s(left), Rx::s(term_sym(c)), Rx::s(right)}));
        }
      }
    }
    g.prods[iid.at({x, y})] = Rx::alt(std::move(alts));
  }

  std::vector<Rx> start_alts;
  for (const auto& cls : st.classes) start_alts.push_back(Rx::s(wid[cls]));
  for (Sym c : st.letters) start_alts.push_back(Rx::s(term_sym(c)));
  g.prods[g.start] = Rx::alt(std::move(start_alts));
  return g;
}

SplicingSystem flat_bridge(const SplicingSystem& cssh13) {
  auto pos = cssh_positions(cssh13);
  if (!pos || *pos != std::make_pair(1, 3)) {
    throw_unsupported("flat_bridge: (1,3)-CSSH system expected");
  }
  SplicingSystem flat;
  flat.kind = Kind::flat;
  flat.alphabet = cssh13.alphabet;
  flat.initial_words = linearize(cssh13.initial_circ);
  std::set<FlatRule> rules;
  for (const LinearRule& r : cssh13.rules) {
    rules.insert({r.u1, Word(), Word(), r.u3});  // (a | 1 $ 1 | b)
  }
  flat.flat_rules.assign(rules.begin(), rules.end());
  flat.normalized = true;
  return flat;
}

GenCfg compile_gen(const SplicingSystem& s_in) {
  SplicingSystem s = normalize(s_in);
  if (s.kind == Kind::flat) {
    if (!check_alphabetic(s)) {
      throw_unsupported("compile: flat system is not alphabetic");
    }
    return insert_grammar(concat_grammar(s), s);
  }
  if (s.kind == Kind::circular_paun) {
    if (!check_alphabetic(s)) {
      throw_unsupported("compile: circular system is not alphabetic");
    }
    auto pos = cssh_positions(s);
    if (pos && *pos == std::make_pair(1, 3)) {
      return compile_gen(flat_bridge(s));
    }
    if (pos && *pos == std::make_pair(2, 4)) {
      return reverse_grammar(compile_gen(cssh_reverse(s)));
    }
    throw_unsupported(
        "compile: only (1,3)- and (2,4)-CSSH circular systems are compiled; "
        "(2,3)-CSSH and general alphabetic circular systems are not");
  }
  throw_unsupported("compile: kind '" + kind_name(s.kind) + "' is not compiled");
}

Cfg compile(const SplicingSystem& s) { return lower(compile_gen(s)); }

}  // namespace splice
