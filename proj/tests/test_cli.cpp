#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "splice/cli.hpp"
#include "splice/error.hpp"
#include "splice/sysfile.hpp"

using namespace splice;

namespace {

const std::string kCorpus = SPLICE_CORPUS_DIR;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string corpus(const std::string& name) { return kCorpus + "/" + name; }

}  // namespace

TEST_CASE("parse and print round trip on the corpus") {
  for (const char* name :
       {"sir_ex.spl", "flat_worked.spl", "dyck_flat.spl", "dyck_circ.spl", "pow2.spl",
        "b_aa_star.spl", "excg.spl", "evens.spl", "unary74.spl", "marked5.spl", "baca.spl",
        "complete_ab.spl", "ex0.spl", "ext_marked.spl", "cssh24.spl"}) {
    CAPTURE(name);
    SplicingSystem s = parse_system(corpus(name));
    SplicingSystem again = parse_system_text(print_system(s));
    CHECK(print_system(again) == print_system(s));
    CHECK(again.alphabet == s.alphabet);
    CHECK(again.initial_words == s.initial_words);
    CHECK(again.initial_circ == s.initial_circ);
    CHECK(again.rules == s.rules);
    CHECK(again.flat_rules == s.flat_rules);
  }
}

TEST_CASE("parser rejects bad input with a line number") {
  CHECK_THROWS_WITH_AS(parse_system_text("kind: flat\nalphabet: a b\ninitial: abc\n"),
                       doctest::Contains("line 3"), Error);
  CHECK_THROWS_WITH_AS(parse_system_text("kind: nope\n"), doctest::Contains("line 1"), Error);
  CHECK_THROWS_AS(parse_system_text("kind: flat\nalphabet: a\nfoo: bar\n"), Error);
  CHECK_THROWS_AS(parse_system_text("kind: flat\nalphabet: a\ninitial: ^a\n"), Error);
  CHECK_THROWS_AS(
      parse_system_text("kind: flat\nalphabet: a\ninitial: a\noption: self-splicing\n"), Error);
}

TEST_CASE("enumerate command") {
  auto sir = run({"enumerate", corpus("sir_ex.spl"), "--report-len", "8"});
  CHECK(sir.code == 0);
  CHECK(sir.out == "ab\naabb\naaabbb\naaaabbbb\n# rounds=2 saturated=yes exact=yes\n");

  auto dyck = run({"enumerate", corpus("dyck_circ.spl"), "--report-len", "4"});
  CHECK(dyck.code == 0);
  CHECK(dyck.out == "^ab\n^aabb\n^abab\n# rounds=1 saturated=yes exact=yes\n");

  auto baa = run({"enumerate", corpus("b_aa_star.spl"), "--report-len", "9"});
  CHECK(baa.code == 0);
  CHECK(baa.out.substr(0, 31) == "b\nbaa\nbaaaa\nbaaaaaa\nbaaaaaaaa\n#");

  // deterministic byte output
  auto again = run({"enumerate", corpus("dyck_circ.spl"), "--report-len", "4"});
  CHECK(again.out == dyck.out);

  auto json = run({"enumerate", corpus("dyck_circ.spl"), "--report-len", "4", "--json"});
  CHECK(json.code == 0);
  CHECK(json.out.find("\"words\"") != std::string::npos);
  CHECK(json.out.find("^aabb") != std::string::npos);
  CHECK(json.out.find("\"saturated\": true") != std::string::npos);
}

TEST_CASE("decide command across the characterized classes") {
  auto m = run({"decide", corpus("marked5.spl")});
  CHECK(m.code == 0);
  CHECK(m.out.find("NOT_REGULAR") == 0);
  CHECK(m.out.find("class: marked") != std::string::npos);
  CHECK(m.out.find("P4: a b c d") != std::string::npos);

  auto c = run({"decide", corpus("complete_ab.spl")});
  CHECK(c.code == 0);
  CHECK(c.out.find("REGULAR") == 0);
  CHECK(c.out.find("class: complete") != std::string::npos);
  CHECK(c.out.find("k0=1") != std::string::npos);

  auto u = run({"decide", corpus("unary74.spl")});
  CHECK(u.code == 0);
  CHECK(u.out.find("REGULAR") == 0);
  CHECK(u.out.find("L1={3,4} n=6 p=2 r=3 G={6,14,16}") != std::string::npos);

  auto e = run({"decide", corpus("ext_marked.spl")});
  CHECK(e.code == 0);
  CHECK(e.out.find("REGULAR") == 0);
  CHECK(e.out.find("class: extended-marked") != std::string::npos);

  auto x = run({"decide", corpus("ex0.spl")});
  CHECK(x.code == 0);
  CHECK(x.out.find("NOT_REGULAR") == 0);
  CHECK(x.out.find("cycle") != std::string::npos);

  // outside the characterized classes: exit 3
  auto b = run({"decide", corpus("baca.spl")});
  CHECK(b.code == 3);
  CHECK(b.out.find("UNKNOWN") == 0);

  auto lin = run({"decide", corpus("b_aa_star.spl")});
  CHECK(lin.code == 3);
}

TEST_CASE("compile and member commands") {
  auto g = run({"compile", corpus("sir_ex.spl")});
  CHECK(g.code == 0);
  CHECK(g.out.find("start: S") == 0);
  CHECK(g.out.find("W{a,b}") != std::string::npos);

  auto cnf = run({"compile", corpus("sir_ex.spl"), "--cnf"});
  CHECK(cnf.code == 0);
  CHECK(cnf.out.find("S'") != std::string::npos);

  auto yes = run({"member", corpus("sir_ex.spl"), "aaabbb"});
  CHECK(yes.code == 0);
  CHECK(yes.out == "true\n");
  auto no = run({"member", corpus("sir_ex.spl"), "aab"});
  CHECK(no.code == 1);
  CHECK(no.out == "false\n");

  // member on a grammar file written by compile
  std::string path = "/tmp/splice_test_grammar.txt";
  auto wrote = run({"compile", corpus("flat_worked.spl"), "--out", path});
  CHECK(wrote.code == 0);
  auto mem = run({"member", path, "aaab"});
  CHECK(mem.code == 0);

  // unsupported kinds exit 3
  auto bad = run({"compile", corpus("b_aa_star.spl")});
  CHECK(bad.code == 3);
  auto bad2 = run({"compile", corpus("pow2.spl")});
  CHECK(bad2.code == 3);
}

TEST_CASE("equal command") {
  // complete systems have no exact automaton; the comparison is bounded
  auto bounded_c =
      run({"equal", corpus("complete_ab.spl"), "--regex", "(b+ab*a)(b+ab*a)*", "--max-len", "10"});
  CHECK(bounded_c.code == 0);
  CHECK(bounded_c.out == "BOUNDED_AGREE bound=10\n");

  // marked complete graph: (a+b)+, decided exactly through its automaton
  std::string path = "/tmp/splice_marked_ab.spl";
  {
    std::ofstream f(path);
    f << "kind: circular\nalphabet: a b\ninitial: ^a ^b\n"
         "rule: a # _ $ a # _\nrule: b # _ $ b # _\nrule: a # _ $ b # _\n";
  }
  auto m = run({"equal", path, "--regex", "(a+b)(a+b)*"});
  CHECK(m.code == 0);
  CHECK(m.out == "EQUAL_EXACT\n");

  // extended marked systems are exact through decoration plus rotation
  // closure: ~{ab} with rule (b,b) generates the rotations of (ab)+
  std::string ext_path = "/tmp/splice_ext_ab.spl";
  {
    std::ofstream f(ext_path);
    f << "kind: circular\nalphabet: a b\ninitial: ^ab\nrule: b # _ $ b # _\n";
  }
  auto ext = run({"equal", ext_path, "--regex", "(ab)(ab)* + (ba)(ba)*"});
  CHECK(ext.code == 0);
  CHECK(ext.out == "EQUAL_EXACT\n");
  auto ext_neq = run({"equal", ext_path, "--regex", "(ab)(ab)*"});
  CHECK(ext_neq.code == 1);
  CHECK(ext_neq.out == "DIFFER witness=ba\n");

  auto differ =
      run({"equal", corpus("dyck_circ.spl"), "--regex", "(ab+ba)(ab+ba)*", "--max-len", "6"});
  CHECK(differ.code == 1);
  CHECK(differ.out.find("DIFFER") == 0);
  CHECK(differ.out.find("witness=aabb") != std::string::npos);

  // against the starred variant the smallest witness is the empty word
  auto eps = run({"equal", corpus("dyck_circ.spl"), "--regex", "(ab+ba)*", "--max-len", "6"});
  CHECK(eps.code == 1);
  CHECK(eps.out.find("witness=_") != std::string::npos);

  auto bounded = run({"equal", corpus("b_aa_star.spl"), "--regex", "b(aa)*", "--max-len", "11"});
  CHECK(bounded.code == 0);
  CHECK(bounded.out == "BOUNDED_AGREE bound=11\n");

  auto wrong = run({"equal", corpus("unary74.spl"), "--regex", "aaa"});
  CHECK(wrong.code == 1);
  CHECK(wrong.out.find("DIFFER witness=aaaa") == 0);
}

TEST_CASE("show command and dot export") {
  auto s = run({"show", corpus("ext_marked.spl")});
  CHECK(s.code == 0);
  CHECK(s.out.find("kind: circular") == 0);
  CHECK(s.out.find("rule: b # _ $ c # _") != std::string::npos);  // symmetric closure

  std::string dot_path = "/tmp/splice_marked5.dot";
  auto d = run({"decide", corpus("marked5.spl"), "--dot", dot_path});
  CHECK(d.code == 0);
  std::ifstream in(dot_path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str().find("graph marked") != std::string::npos);
}

TEST_CASE("usage errors") {
  auto nocmd = run({});
  CHECK(nocmd.code == 2);
  auto nofile = run({"enumerate", "/nonexistent/x.spl"});
  CHECK(nofile.code == 2);
  auto badflag = run({"enumerate", corpus("sir_ex.spl"), "--frobnicate"});
  CHECK(badflag.code == 2);
  auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("enumerate") != std::string::npos);
}
