#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "splice/engine.hpp"
#include "splice/error.hpp"

using namespace splice;

namespace {

SplicingSystem flat_system(const std::string& alphabet, std::set<Word> initial,
                           std::vector<FlatRule> rules) {
  SplicingSystem s;
  s.kind = Kind::flat;
  s.alphabet = alphabet;
  s.initial_words = std::move(initial);
  s.flat_rules = std::move(rules);
  return normalize(std::move(s));
}

SplicingSystem circ_system(const std::string& alphabet, std::set<Word> initial,
                           std::vector<LinearRule> rules, bool self_splicing = false) {
  SplicingSystem s;
  s.kind = Kind::circular_paun;
  s.alphabet = alphabet;
  for (const Word& w : initial) s.initial_circ.insert(CircWord::of(w));
  s.rules = std::move(rules);
  s.self_splicing = self_splicing;
  return normalize(std::move(s));
}

SplicingSystem linear_system(const std::string& alphabet, std::set<Word> initial,
                             std::vector<LinearRule> rules) {
  SplicingSystem s;
  s.kind = Kind::linear;
  s.alphabet = alphabet;
  s.initial_words = std::move(initial);
  s.rules = std::move(rules);
  return normalize(std::move(s));
}

}  // namespace

TEST_CASE("linear step on the cg rule") {
  LinearRule r{"cg", "cg", "cg", "cg"};
  auto out = linear_step(r, "aacgcgaacgcgaa", "ttcgcgtt");
  std::set<std::pair<Word, Word>> expect{
      {"aacgcgtt", "ttcgcgaacgcgaa"},
      {"aacgcgaacgcgtt", "ttcgcgaa"},
  };
  CHECK(out == expect);
}

TEST_CASE("linear step with one factorization per side") {
  LinearRule r{"baa", "", "b", "a"};
  auto out = linear_step(r, "baa", "baa");
  CHECK(out == std::set<std::pair<Word, Word>>{{"baaaa", "b"}});
}

TEST_CASE("linear step with absent site") {
  LinearRule r{"aa", "b", "a", "a"};
  CHECK(linear_step(r, "bbb", "bbb").empty());
}

TEST_CASE("flat step productions") {
  CHECK(flat_step({"ab", "c", "aa", "b"}, "babcc", "aaccb") == std::set<Word>{"babaaccbcc"});
  // the inserted word must be at least two letters long here
  CHECK(flat_step({"b", "b", "a", "a"}, "bb", "a").empty());
  CHECK(flat_step({"b", "b", "", "a"}, "bb", "a") == std::set<Word>{"bab"});
  // both cut positions before a b
  CHECK(flat_step({"", "b", "a", "a"}, "bbc", "aba") == std::set<Word>{"ababbc", "bababc"});
}

TEST_CASE("circular step") {
  LinearRule glue_aa{"", "", "", "aa"};
  auto out = circular_step(glue_aa, CircWord::of("aa"), CircWord::of("aa"));
  CHECK(out == std::set<CircWord>{CircWord::of("aaaa")});

  LinearRule six{"aaaaaa", "", "", "aaaaaa"};
  auto u = circular_step(six, CircWord::of(Word(6, 'a')), CircWord::of(Word(14, 'a')));
  CHECK(u == std::set<CircWord>{CircWord::of(Word(20, 'a'))});
  // rotations shorter than the site never match
  CHECK(circular_step(six, CircWord::of("aaa"), CircWord::of(Word(14, 'a'))).empty());

  // brute force over the eligible rotations of (~baca, ~baca)
  LinearRule aa{"a", "", "a", ""};
  std::set<CircWord> expect;
  for (const Word& r1 : rotations("baca")) {
    if (r1.back() != 'a') continue;
    for (const Word& r2 : rotations("baca")) {
      if (r2.back() != 'a') continue;
      expect.insert(CircWord::of(r1 + r2));
    }
  }
  auto got = circular_step(aa, CircWord::of("baca"), CircWord::of("baca"));
  CHECK(got == expect);
  CHECK(got.count(CircWord::of("bacabaca")) == 1);
}

TEST_CASE("self splicing step") {
  LinearRule r{"a", "", "b", ""};
  auto out = self_splice_step(r, CircWord::of("ab"));
  CHECK(out ==
        std::set<std::pair<CircWord, CircWord>>{{CircWord::of("a"), CircWord::of("b")}});

  // the all-empty rule cuts at every pair of positions
  LinearRule free{"", "", "", ""};
  std::set<std::pair<CircWord, CircWord>> expect;
  for (const Word& rot : rotations("ab")) {
    for (std::size_t i = 0; i <= rot.size(); ++i) {
      expect.insert({CircWord::of(rot.substr(0, i)), CircWord::of(rot.substr(i))});
    }
  }
  CHECK(self_splice_step(free, CircWord::of("ab")) == expect);

  LinearRule absent{"c", "", "c", ""};
  CHECK(self_splice_step(absent, CircWord::of("ab")).empty());
}

TEST_CASE("head circular step") {
  HeadTriple t{"a", "b", "a"};
  auto out = head_circ_step(t, t, CircWord::of("daba"), CircWord::of("eaba"));
  CHECK(out.count(CircWord::of("dabaeaba")) == 1);

  CHECK_THROWS_AS(head_circ_step({"a", "b", "a"}, {"a", "c", "a"}, CircWord::of("daba"),
                                 CircWord::of("eaba")),
                  Error);

  CHECK(head_circ_step(t, t, CircWord::of("dd"), CircWord::of("eaba")).empty());
}

TEST_CASE("pixton circular step") {
  PixtonRule r{"a", "b", "a", "b"};  // r = (a, b; a), paired beta' = b
  auto out = pixton_circ_step(r, CircWord::of("ac"), CircWord::of("bd"));
  CHECK(out.count(CircWord::of("cadb")) == 1);

  // the (a, xa; xa) rule pumps x; brute-force oracle over rotations
  PixtonRule pump{"a", "xa", "xa", "a"};
  std::set<CircWord> expect;
  for (const Word& r1 : rotations("cxae")) {
    if (r1[0] != 'a') continue;
    for (const Word& r2 : rotations("cxae")) {
      if (r2.substr(0, 2) != "xa") continue;
      expect.insert(CircWord::of(r1.substr(1) + "xa" + r2.substr(2) + "a"));
    }
  }
  auto got = pixton_circ_step(pump, CircWord::of("cxae"), CircWord::of("cxae"));
  CHECK(got == expect);
  CHECK(!got.empty());

  PixtonRule nomatch{"q", "q", "q", "q"};
  CHECK(pixton_circ_step(nomatch, CircWord::of("ac"), CircWord::of("bd")).empty());
}

TEST_CASE("normalize adds the symmetric closure") {
  SplicingSystem s = circ_system("abc", {"aac", "b"}, {LinearRule{"c", "", "b", ""}});
  CHECK(s.rules.size() == 2);
  CHECK(std::find(s.rules.begin(), s.rules.end(), LinearRule{"b", "", "c", ""}) !=
        s.rules.end());
  CHECK(s.symmetric_closed);
  CHECK(s.dropped_circ.empty());
  CHECK(s.dropped_rules.empty());
}

TEST_CASE("normalize drops inert words and useless rules") {
  SplicingSystem s = circ_system("abcd", {"aac", "b", "dd"}, {LinearRule{"c", "", "b", ""}});
  CHECK(s.initial_circ == std::set<CircWord>{CircWord::of("aac"), CircWord::of("b")});
  CHECK(s.dropped_circ == std::set<CircWord>{CircWord::of("dd")});

  // a rule whose site occurs in no initial word is useless
  SplicingSystem u = circ_system("abcd", {"aac", "b"},
                                 {LinearRule{"c", "", "b", ""}, LinearRule{"d", "", "b", ""}});
  CHECK(u.rules.size() == 2);  // (c,b) and its symmetric twin
  CHECK(u.dropped_rules.size() == 2);
}

TEST_CASE("normalize drops the empty word from initial sets") {
  SplicingSystem s = circ_system("ab", {"", "ab"}, {LinearRule{"", "", "", ""}});
  CHECK(s.initial_circ == std::set<CircWord>{CircWord::of("ab")});
  CHECK(s.dropped_circ == std::set<CircWord>{CircWord()});
}

TEST_CASE("generate: flat a^n b^n") {
  SplicingSystem s = flat_system("ab", {"ab"}, {FlatRule{"a", "b", "a", "b"}});
  GenerationResult res = generate(s, {1000, 8, 8});
  CHECK(res.words == std::set<Word>{"ab", "aabb", "aaabbb", "aaaabbbb"});
  CHECK(res.saturated);
  CHECK(res.exact);
}

TEST_CASE("generate: circular dyck") {
  SplicingSystem s = circ_system("ab", {"ab"}, {LinearRule{"", "", "", ""}});
  GenerationResult res = generate(s, {1000, 4, 4});
  CHECK(res.circ_words() == std::set<CircWord>{CircWord::of("ab"), CircWord::of("aabb"),
                                               CircWord::of("abab")});
  CHECK(res.saturated);
  CHECK(res.exact);
}

TEST_CASE("generate: linear b(aa)*") {
  SplicingSystem s = linear_system("ab", {"b", "baa"}, {LinearRule{"baa", "", "b", "a"}});
  GenerationResult res = generate(s, {1000, 9, 9});
  CHECK(res.words == std::set<Word>{"b", "baa", "baaaa", "baaaaaa", "baaaaaaaa"});
  CHECK(res.saturated);
  CHECK(!res.exact);  // linear steps may shrink, saturation stays heuristic
}

TEST_CASE("generate is monotone in the round budget and deterministic") {
  SplicingSystem s = flat_system("ab", {"ab"}, {FlatRule{"", "", "", ""}});
  GenerationResult r1 = generate(s, {1, 6, 6});
  GenerationResult r2 = generate(s, {2, 6, 6});
  GenerationResult r2b = generate(s, {2, 6, 6});
  CHECK(std::includes(r2.words.begin(), r2.words.end(), r1.words.begin(), r1.words.end()));
  CHECK(r2.words == r2b.words);
  CHECK(r2.rounds_used == r2b.rounds_used);
}

TEST_CASE("symmetric closure does not change the generated circular language") {
  // one-sided rule set with the closure bypassed, against the closed system
  SplicingSystem one_sided;
  one_sided.kind = Kind::circular_paun;
  one_sided.alphabet = "ab";
  one_sided.initial_circ = {CircWord::of("aa"), CircWord::of("bb"), CircWord::of("abab")};
  one_sided.rules = {LinearRule{"", "", "", "aa"}, LinearRule{"", "", "", "bb"},
                     LinearRule{"", "", "", "abab"}, LinearRule{"", "", "", "baba"}};
  one_sided.normalized = true;  // test scaffolding only

  SplicingSystem closed = one_sided;
  closed.normalized = false;
  closed = normalize(std::move(closed));
  CHECK(closed.rules.size() == 8);

  GenerationResult a = generate(one_sided, {1000, 6, 6});
  GenerationResult b = generate(closed, {1000, 6, 6});
  CHECK(a.words == b.words);
}

TEST_CASE("generate rejects bad budgets and raw systems") {
  SplicingSystem s = flat_system("ab", {"ab"}, {FlatRule{"a", "b", "a", "b"}});
  CHECK_THROWS_AS(generate(s, {0, 8, 8}), Error);
  CHECK_THROWS_AS(generate(s, {10, 0, 0}), Error);
  CHECK_THROWS_AS(generate(s, {10, 4, 8}), Error);
  SplicingSystem raw;
  raw.kind = Kind::flat;
  raw.alphabet = "ab";
  raw.initial_words = {"ab"};
  CHECK_THROWS_AS(generate(raw, {10, 8, 8}), Error);
}

TEST_CASE("head and pixton systems iterate through the engine") {
  SplicingSystem h;
  h.kind = Kind::circular_head;
  h.alphabet = "ab";
  h.initial_circ = {CircWord::of("ab")};
  h.head_triples = {HeadTriple{"", "a", ""}};
  h = normalize(std::move(h));
  // splicing ~ab with itself at crossing a gives ~baba = ~abab
  GenerationResult res = generate(h, {100, 6, 6});
  CHECK(res.words == std::set<Word>{"ab", "abab", "ababab"});
  CHECK(res.exact);  // head outputs carry both inputs entirely

  SplicingSystem p;
  p.kind = Kind::circular_pixton;
  p.alphabet = "ab";
  p.initial_circ = {CircWord::of("ab")};
  p.pixton_rules = {PixtonRule{"a", "a", "a", "a"}};
  p = normalize(std::move(p));
  // e beta e' beta' with e = e' = b and beta = beta' = a gives ~baba
  GenerationResult pres = generate(p, {100, 6, 6});
  CHECK(pres.words == std::set<Word>{"ab", "abab", "ababab"});
  CHECK(!pres.exact);  // pixton replacement may shrink
}

TEST_CASE("length law holds for flat and circular outputs") {
  // every flat or circular Paun child has the length of both parents
  SplicingSystem s = flat_system("ab", {"ab", "ba"}, {FlatRule{"", "", "", ""}});
  GenerationResult res = generate(s, {1000, 6, 6});
  for (const Word& w : res.words) CHECK(w.size() % 2 == 0);
}
