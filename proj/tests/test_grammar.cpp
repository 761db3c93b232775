#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "splice/automata.hpp"
#include "splice/compile.hpp"
#include "splice/engine.hpp"
#include "splice/error.hpp"
#include "splice/grammar.hpp"

using namespace splice;

namespace {

std::vector<Word> all_words(const std::string& alphabet, std::size_t maxlen) {
  std::vector<Word> out{""};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= maxlen; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (Sym a : alphabet) out.push_back(out[i] + a);
    }
    begin = end;
  }
  return out;
}

// Test-only direct evaluator for generalized grammars: iterate nonterminal
// word sets to a fixpoint, expanding regex right sides set-theoretically.
std::set<Word> eval_rx(const Rx& rx, const std::vector<std::set<Word>>& env, std::size_t maxlen) {
  switch (rx.op) {
    case Rx::Op::eps:
      return {Word()};
    case Rx::Op::sym:
      if (is_term(rx.sym)) return {Word(1, term_char(rx.sym))};
      return env[rx.sym];
    case Rx::Op::cat: {
      std::set<Word> acc{Word()};
      for (const Rx& k : rx.kids) {
        std::set<Word> next;
        std::set<Word> part = eval_rx(k, env, maxlen);
        for (const Word& a : acc) {
          for (const Word& b : part) {
            if (a.size() + b.size() <= maxlen) next.insert(a + b);
          }
        }
        acc = std::move(next);
      }
      return acc;
    }
    case Rx::Op::alt: {
      std::set<Word> acc;
      for (const Rx& k : rx.kids) {
        std::set<Word> part = eval_rx(k, env, maxlen);
        acc.insert(part.begin(), part.end());
      }
      return acc;
    }
    case Rx::Op::star:
    case Rx::Op::plus: {
      std::set<Word> body = eval_rx(rx.kids[0], env, maxlen);
      std::set<Word> acc;
      if (rx.op == Rx::Op::star) acc.insert(Word());
      std::set<Word> layer = body;
      while (!layer.empty()) {
        std::set<Word> next;
        for (const Word& w : layer) {
          if (acc.insert(w).second) {
            for (const Word& b : body) {
              if (w.size() + b.size() <= maxlen) next.insert(w + b);
            }
          }
        }
        layer = std::move(next);
      }
      if (rx.op == Rx::Op::plus) acc.erase(Word());
      return acc;
    }
  }
  return {};
}

std::set<Word> gen_enumerate(const GenCfg& g, std::size_t maxlen) {
  std::vector<std::set<Word>> env(g.nt_names.size());
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [nt, rx] : g.prods) {
      std::set<Word> words = eval_rx(rx, env, maxlen);
      if (words != env[nt]) {
        env[nt] = std::move(words);
        changed = true;
      }
    }
  }
  return env[g.start];
}

// The worked grammar for the flat system (I = {aa, ab},
// R = {(1,a,a,a), (a,b,a,b)}), spelled literally with its starred right
// sides: W_aa -> ((a I_aa)^2)* a I_aa a, and so on.
GenCfg worked_example_grammar() {
  GenCfg g;
  g.terminals = "ab";
  int S = g.add_nt("S");
  int Waa = g.add_nt("W{a,a}");
  int Wab = g.add_nt("W{a,b}");
  int Iaa = g.add_nt("I{a,a}");
  int Iab = g.add_nt("I{a,b}");
  int Ibb = g.add_nt("I{b,b}");
  g.start = S;
  Rx a = Rx::s(term_sym('a'));
  Rx b = Rx::s(term_sym('b'));
  auto aI = [&](int slot) { return Rx::cat({a, Rx::s(slot)}); };
  g.prods[S] = Rx::alt({Rx::s(Waa), Rx::s(Wab)});
  g.prods[Waa] = Rx::cat({Rx::star(Rx::cat({aI(Iaa), aI(Iaa)})), aI(Iaa), a});
  g.prods[Wab] = Rx::cat({Rx::star(Rx::cat({aI(Iaa), aI(Iaa)})), aI(Iab), b});
  g.prods[Iaa] = Rx::alt({Rx::cat({Rx::s(Iaa), Rx::s(Waa), Rx::s(Iaa)}), Rx::eps()});
  g.prods[Iab] = Rx::alt({Rx::cat({Rx::s(Iaa), Rx::s(Wab), Rx::s(Ibb)}), Rx::eps()});
  g.prods[Ibb] = Rx::eps();
  return g;
}

SplicingSystem worked_example_system() {
  SplicingSystem s;
  s.kind = Kind::flat;
  s.alphabet = "ab";
  s.initial_words = {"aa", "ab"};
  s.flat_rules = {FlatRule{"", "a", "a", "a"}, FlatRule{"a", "b", "a", "b"}};
  return normalize(std::move(s));
}

// (a^2)+ union {a^(p+2n) b^p : p >= 1, n >= 0}, cut at maxlen.
std::set<Word> worked_example_language(std::size_t maxlen) {
  std::set<Word> out;
  for (std::size_t k = 2; k <= maxlen; k += 2) out.insert(Word(k, 'a'));
  for (std::size_t p = 1; p <= maxlen; ++p) {
    for (std::size_t n = 0; p + 2 * n + p <= maxlen; ++n) {
      out.insert(Word(p + 2 * n, 'a') + Word(p, 'b'));
    }
  }
  return out;
}

bool dyck(const Word& w) {
  int depth = 0;
  for (Sym c : w) {
    depth += c == 'a' ? 1 : -1;
    if (depth < 0) return false;
  }
  return depth == 0 && !w.empty();
}

std::set<Word> to_set(const std::vector<Word>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("check_alphabetic") {
  SplicingSystem s;
  s.kind = Kind::flat;
  s.alphabet = "ab";
  s.initial_words = {"ab"};
  s.flat_rules = {FlatRule{"a", "b", "a", "b"}};
  CHECK(check_alphabetic(s));
  s.flat_rules = {FlatRule{"ab", "c", "aa", "b"}};
  s.alphabet = "abc";
  CHECK(!check_alphabetic(s));

  SplicingSystem c;
  c.kind = Kind::circular_paun;
  c.alphabet = "bc";
  c.initial_circ = {CircWord::of("b")};
  c.rules = {LinearRule{"c", "", "b", ""}};
  CHECK(check_alphabetic(c));

  SplicingSystem lin;
  lin.kind = Kind::linear;
  CHECK_THROWS_AS(check_alphabetic(lin), Error);
}

TEST_CASE("lowering preserves the worked example language") {
  GenCfg g = worked_example_grammar();
  Cfg cnf = lower(g);
  CHECK(cnf.cnf);
  CHECK(to_set(grammar_enumerate(cnf, 10)) == gen_enumerate(g, 10));
  CHECK(gen_enumerate(g, 10) == worked_example_language(10));
}

TEST_CASE("concat grammar of the worked example") {
  GenCfg k = concat_grammar(worked_example_system());
  // (a^2)+ + (a^2)* ab
  Dfa oracle = regex_to_dfa("(aa)+ + (aa)*ab");
  std::set<Word> expect;
  for (const Word& w : enumerate_dfa(oracle, 10)) expect.insert(w);
  CHECK(to_set(grammar_enumerate(lower(k), 10)) == expect);
}

TEST_CASE("insert grammar of the worked example") {
  SplicingSystem s = worked_example_system();
  GenCfg full = insert_grammar(concat_grammar(s), s);
  CHECK(to_set(grammar_enumerate(lower(full), 10)) == worked_example_language(10));

  // agreement with the engine and with the literal paper-style grammar
  GenerationResult res = generate(s, {1000, 10, 10});
  CHECK(res.words == worked_example_language(10));
  CHECK(gen_enumerate(worked_example_grammar(), 10) == worked_example_language(10));
}

TEST_CASE("insert grammar rejects a foreign concat grammar") {
  SplicingSystem s = worked_example_system();
  SplicingSystem other;
  other.kind = Kind::flat;
  other.alphabet = "ab";
  other.initial_words = {"ab"};
  other.flat_rules = {FlatRule{"", "", "", ""}};
  other = normalize(std::move(other));
  CHECK_THROWS_AS(insert_grammar(concat_grammar(other), s), Error);
}

TEST_CASE("concat closure degenerate cases") {
  // no boundary-empty rule: K = I
  SplicingSystem s;
  s.kind = Kind::flat;
  s.alphabet = "ab";
  s.initial_words = {"ab", "ba"};
  s.flat_rules = {FlatRule{"a", "b", "a", "b"}};
  s = normalize(std::move(s));
  CHECK(to_set(grammar_enumerate(lower(concat_grammar(s)), 6)) == std::set<Word>{"ab", "ba"});

  // single letter and the all-empty rule: K = a+
  SplicingSystem t;
  t.kind = Kind::flat;
  t.alphabet = "a";
  t.initial_words = {"a"};
  t.flat_rules = {FlatRule{"", "", "", ""}};
  t = normalize(std::move(t));
  std::set<Word> expect;
  for (std::size_t k = 1; k <= 6; ++k) expect.insert(Word(k, 'a'));
  CHECK(to_set(grammar_enumerate(lower(concat_grammar(t)), 6)) == expect);
}

TEST_CASE("sir_ex compiles to a grammar for a^n b^n") {
  SplicingSystem s;
  s.kind = Kind::flat;
  s.alphabet = "ab";
  s.initial_words = {"ab"};
  s.flat_rules = {FlatRule{"a", "b", "a", "b"}};
  s = normalize(std::move(s));
  Cfg cnf = compile(s);
  CHECK(cyk_member(cnf, "aaabbb"));
  CHECK(!cyk_member(cnf, "aab"));
  CHECK(!cyk_member(cnf, ""));
  CHECK(to_set(grammar_enumerate(cnf, 6)) == std::set<Word>{"ab", "aabb", "aaabbb"});
}

TEST_CASE("worked example member checks") {
  Cfg cnf = compile(worked_example_system());
  CHECK(cyk_member(cnf, "aaab"));  // p = 1, n = 1
  CHECK(cyk_member(cnf, "aa"));
  CHECK(cyk_member(cnf, "aabb"));
  CHECK(!cyk_member(cnf, "a"));
  CHECK(!cyk_member(cnf, "ba"));
  CHECK_THROWS_AS(cyk_member(cnf, "xyz"), Error);
}

TEST_CASE("dyck flat system compiles to the dyck language") {
  SplicingSystem s;
  s.kind = Kind::flat;
  s.alphabet = "ab";
  s.initial_words = {"ab"};
  s.flat_rules = {FlatRule{"", "", "", ""}};
  s = normalize(std::move(s));
  Cfg cnf = compile(s);
  for (const Word& w : all_words("ab", 8)) {
    CAPTURE(w);
    CHECK(cyk_member(cnf, w) == dyck(w));
  }
}

TEST_CASE("cssh (1,3) bridge compiles the full linearization") {
  // complete system on {a,b} with I = ~{aa, b}
  SplicingSystem s;
  s.kind = Kind::circular_paun;
  s.alphabet = "ab";
  s.initial_circ = {CircWord::of("aa"), CircWord::of("b")};
  s.rules = {LinearRule{"a", "", "a", ""}, LinearRule{"b", "", "b", ""},
             LinearRule{"a", "", "b", ""}};
  s = normalize(std::move(s));
  Cfg cnf = compile(s);
  for (const Word& w : all_words("ab", 8)) {
    bool expect = !w.empty() && std::count(w.begin(), w.end(), 'a') % 2 == 0;
    CAPTURE(w);
    CHECK(cyk_member(cnf, w) == expect);
  }
}

TEST_CASE("cssh membership is rotation invariant") {
  // extended marked example: I = ~{aac, b}, rule (c, b)
  SplicingSystem s;
  s.kind = Kind::circular_paun;
  s.alphabet = "abc";
  s.initial_circ = {CircWord::of("aac"), CircWord::of("b")};
  s.rules = {LinearRule{"c", "", "b", ""}};
  s = normalize(std::move(s));
  Cfg cnf = compile(s);
  for (const Word& w : all_words("abc", 8)) {
    if (w.empty()) continue;
    bool any = cyk_member(cnf, w);
    for (std::size_t i = 1; i < w.size(); ++i) {
      CHECK(cyk_member(cnf, w.substr(i) + w.substr(0, i)) == any);
    }
  }
}

TEST_CASE("(2,4) systems compile through the reversal") {
  SplicingSystem s13;
  s13.kind = Kind::circular_paun;
  s13.alphabet = "abc";
  s13.initial_circ = {CircWord::of("aac"), CircWord::of("b")};
  s13.rules = {LinearRule{"c", "", "b", ""}};
  s13 = normalize(std::move(s13));

  SplicingSystem s24 = cssh_reverse(s13);
  CHECK(cssh_positions(s24) == std::make_pair(2, 4));
  Cfg g13 = compile(s13);
  Cfg g24 = compile(s24);
  for (const Word& w : all_words("abc", 8)) {
    CHECK(cyk_member(g24, w) == cyk_member(g13, reversed(w)));
  }
}

TEST_CASE("unsupported compilations are rejected loudly") {
  // (2,3)-CSSH system
  SplicingSystem s23;
  s23.kind = Kind::circular_paun;
  s23.alphabet = "ab";
  s23.initial_circ = {CircWord::of("ab")};
  s23.rules = {LinearRule{"", "a", "a", ""}, LinearRule{"", "b", "b", ""}};
  CHECK_THROWS_AS(compile(normalize(std::move(s23))), Error);

  // non-alphabetic flat rule
  SplicingSystem flat;
  flat.kind = Kind::flat;
  flat.alphabet = "abc";
  flat.initial_words = {"babcc"};
  flat.flat_rules = {FlatRule{"ab", "c", "aa", "b"}};
  CHECK_THROWS_AS(compile(normalize(std::move(flat))), Error);

  // general alphabetic circular (site of length 2)
  SplicingSystem gen;
  gen.kind = Kind::circular_paun;
  gen.alphabet = "ab";
  gen.initial_circ = {CircWord::of("ab")};
  gen.rules = {LinearRule{"a", "b", "a", "b"}};
  CHECK_THROWS_AS(compile(normalize(std::move(gen))), Error);

  SplicingSystem lin;
  lin.kind = Kind::linear;
  lin.alphabet = "ab";
  lin.initial_words = {"ab"};
  lin.rules = {LinearRule{"a", "", "a", ""}};
  CHECK_THROWS_AS(compile(normalize(std::move(lin))), Error);
}

TEST_CASE("compiler and engine agree on alphabetic corpus systems") {
  std::vector<SplicingSystem> corpus;

  corpus.push_back(worked_example_system());

  SplicingSystem sir;
  sir.kind = Kind::flat;
  sir.alphabet = "ab";
  sir.initial_words = {"ab"};
  sir.flat_rules = {FlatRule{"a", "b", "a", "b"}};
  corpus.push_back(normalize(std::move(sir)));

  SplicingSystem dyckf;
  dyckf.kind = Kind::flat;
  dyckf.alphabet = "ab";
  dyckf.initial_words = {"ab"};
  dyckf.flat_rules = {FlatRule{"", "", "", ""}};
  corpus.push_back(normalize(std::move(dyckf)));

  SplicingSystem mixed;
  mixed.kind = Kind::flat;
  mixed.alphabet = "ab";
  mixed.initial_words = {"a", "ab"};
  mixed.flat_rules = {FlatRule{"a", "", "b", ""}, FlatRule{"", "b", "", "a"}};
  corpus.push_back(normalize(std::move(mixed)));

  for (std::size_t i = 0; i < corpus.size(); ++i) {
    CAPTURE(i);
    Cfg cnf = compile(corpus[i]);
    GenerationResult res = generate(corpus[i], {100000, 10, 10});
    REQUIRE(res.exact);
    CHECK(to_set(grammar_enumerate(cnf, 10)) == res.words);
  }
}

TEST_CASE("grammar text round trip") {
  GenCfg g = compile_gen(worked_example_system());
  std::string text = grammar_to_text(g);
  Cfg parsed = grammar_from_text(text);
  CHECK(to_set(grammar_enumerate(to_cnf(parsed), 9)) == worked_example_language(9));

  Cfg cnf = lower(g);
  std::string cnf_text = grammar_to_text(cnf);
  Cfg cnf_parsed = grammar_from_text(cnf_text);
  CHECK(to_set(grammar_enumerate(to_cnf(cnf_parsed), 9)) == worked_example_language(9));

  CHECK_THROWS_AS(grammar_from_text("terminals: a\nA -> a"), Error);  // no start
  CHECK_THROWS_AS(grammar_from_text("start: S\nterminals: a\nS -> q"), Error);
}

TEST_CASE("grammar reversal") {
  GenCfg g = compile_gen(worked_example_system());
  GenCfg rev = reverse_grammar(g);
  std::set<Word> expect;
  for (const Word& w : worked_example_language(9)) expect.insert(reversed(w));
  CHECK(to_set(grammar_enumerate(lower(rev), 9)) == expect);
}
