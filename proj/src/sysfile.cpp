#include "splice/sysfile.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "splice/error.hpp"

namespace splice {

namespace {

[[noreturn]] void fail(int lineno, const std::string& msg) {
  throw_parse("line " + std::to_string(lineno) + ": " + msg);
}

std::vector<std::string> tokens_of(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

// Split a rule body on single-character separators, keeping empty fields;
// fields are whitespace-trimmed.
std::vector<std::string> split_fields(const std::string& body, const std::string& seps) {
  std::vector<std::string> out(1);
  for (char c : body) {
    if (seps.find(c) != std::string::npos) {
      out.emplace_back();
    } else {
      out.back().push_back(c);
    }
  }
  for (std::string& f : out) {
    f.erase(std::remove(f.begin(), f.end(), ' '), f.end());
    f.erase(std::remove(f.begin(), f.end(), '\t'), f.end());
  }
  return out;
}

Word word_of_token(const std::string& tok, int lineno) {
  if (tok == "_") return Word();
  if (tok.find('_') != std::string::npos) fail(lineno, "'_' can only stand alone");
  return tok;
}

}  // namespace

std::string word_token(const Word& w) { return w.empty() ? "_" : w; }

std::string circ_token(const CircWord& c) { return "^" + word_token(c.rep()); }

SplicingSystem parse_system_text(const std::string& text) {
  SplicingSystem s;
  bool have_kind = false;
  bool have_alphabet = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  auto check_word = [&](const Word& w, int ln) {
    for (Sym a : w) {
      if (s.alphabet.find(a) == std::string::npos) {
        fail(ln, std::string("symbol '") + a + "' not in alphabet");
      }
    }
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::string stripped = line;
    // comments start with '#' only at the beginning of a line, since '#'
    // is meaningful inside rule bodies
    std::size_t first = stripped.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (stripped[first] == '#') continue;

    auto colon = stripped.find(':');
    if (colon == std::string::npos) fail(lineno, "expected 'key: value'");
    std::string key = stripped.substr(first, colon - first);
    std::string value = stripped.substr(colon + 1);

    if (key == "kind") {
      if (have_kind) fail(lineno, "duplicate kind line");
      auto tok = tokens_of(value);
      if (tok.size() != 1) fail(lineno, "kind takes one value");
      if (tok[0] == "linear") s.kind = Kind::linear;
      else if (tok[0] == "circular") s.kind = Kind::circular_paun;
      else if (tok[0] == "circular-head") s.kind = Kind::circular_head;
      else if (tok[0] == "circular-pixton") s.kind = Kind::circular_pixton;
      else if (tok[0] == "flat") s.kind = Kind::flat;
      else fail(lineno, "unknown kind '" + tok[0] + "'");
      have_kind = true;
    } else if (key == "alphabet") {
      if (!have_kind) fail(lineno, "kind must come first");
      for (const std::string& t : tokens_of(value)) {
        if (t.size() != 1) fail(lineno, "alphabet symbols are single characters");
        if (t[0] == '_' || t[0] == '^' || t[0] == '#' || t[0] == '$' || t[0] == '|') {
          fail(lineno, std::string("symbol '") + t[0] + "' is reserved");
        }
        s.alphabet += t[0];
      }
      std::sort(s.alphabet.begin(), s.alphabet.end());
      s.alphabet.erase(std::unique(s.alphabet.begin(), s.alphabet.end()), s.alphabet.end());
      have_alphabet = true;
    } else if (key == "initial") {
      if (!have_alphabet) fail(lineno, "alphabet must come before initial");
      for (const std::string& t : tokens_of(value)) {
        if (t[0] == '^') {
          if (!s.is_circular()) fail(lineno, "'^' words need a circular kind");
          Word w = word_of_token(t.substr(1), lineno);
          check_word(w, lineno);
          s.initial_circ.insert(CircWord::of(w));
        } else {
          Word w = word_of_token(t, lineno);
          check_word(w, lineno);
          if (s.is_circular()) {
            s.initial_circ.insert(CircWord::of(w));
          } else {
            s.initial_words.insert(w);
          }
        }
      }
    } else if (key == "rule") {
      if (!have_alphabet) fail(lineno, "alphabet must come before rules");
      if (s.kind == Kind::linear || s.kind == Kind::circular_paun) {
        auto parts = split_fields(value, "#$");
        if (parts.size() != 4) fail(lineno, "rule needs the shape u1 # u2 $ u3 # u4");
        LinearRule r{word_of_token(parts[0].empty() ? "_" : parts[0], lineno),
                     word_of_token(parts[1].empty() ? "_" : parts[1], lineno),
                     word_of_token(parts[2].empty() ? "_" : parts[2], lineno),
                     word_of_token(parts[3].empty() ? "_" : parts[3], lineno)};
        check_word(r.u1, lineno);
        check_word(r.u2, lineno);
        check_word(r.u3, lineno);
        check_word(r.u4, lineno);
        s.rules.push_back(r);
      } else if (s.kind == Kind::flat) {
        auto parts = split_fields(value, "|$");
        if (parts.size() != 4) {
          fail(lineno, "flat rule needs the shape alpha | beta $ gamma | delta");
        }
        FlatRule r{word_of_token(parts[0].empty() ? "_" : parts[0], lineno),
                   word_of_token(parts[1].empty() ? "_" : parts[1], lineno),
                   word_of_token(parts[2].empty() ? "_" : parts[2], lineno),
                   word_of_token(parts[3].empty() ? "_" : parts[3], lineno)};
        check_word(r.alpha, lineno);
        check_word(r.beta, lineno);
        check_word(r.gamma, lineno);
        check_word(r.delta, lineno);
        s.flat_rules.push_back(r);
      } else if (s.kind == Kind::circular_head) {
        auto parts = split_fields(value, "#");
        if (parts.size() != 3) fail(lineno, "head triple needs the shape p # x # q");
        HeadTriple t{word_of_token(parts[0].empty() ? "_" : parts[0], lineno),
                     word_of_token(parts[1].empty() ? "_" : parts[1], lineno),
                     word_of_token(parts[2].empty() ? "_" : parts[2], lineno)};
        check_word(t.p, lineno);
        check_word(t.x, lineno);
        check_word(t.q, lineno);
        s.head_triples.push_back(t);
      } else {
        auto parts = split_fields(value, "#");
        if (parts.size() != 4) {
          fail(lineno, "pixton rule needs the shape alpha # alpha' # beta # beta'");
        }
        PixtonRule r{word_of_token(parts[0].empty() ? "_" : parts[0], lineno),
                     word_of_token(parts[1].empty() ? "_" : parts[1], lineno),
                     word_of_token(parts[2].empty() ? "_" : parts[2], lineno),
                     word_of_token(parts[3].empty() ? "_" : parts[3], lineno)};
        check_word(r.alpha, lineno);
        check_word(r.alpha_prime, lineno);
        check_word(r.beta, lineno);
        check_word(r.beta_prime, lineno);
        s.pixton_rules.push_back(r);
      }
    } else if (key == "option") {
      for (const std::string& t : tokens_of(value)) {
        if (t == "self-splicing") {
          if (s.kind != Kind::circular_paun) fail(lineno, "self-splicing needs kind circular");
          s.self_splicing = true;
        } else if (t == "one-splicing") {
          if (s.kind != Kind::linear) fail(lineno, "one-splicing needs kind linear");
          s.one_splicing = true;
        } else {
          fail(lineno, "unknown option '" + t + "'");
        }
      }
    } else {
      fail(lineno, "unknown key '" + key + "'");
    }
  }

  if (!have_kind) throw_parse("missing kind line");
  if (!have_alphabet) throw_parse("missing alphabet line");

  // dedupe rules, deterministically
  std::sort(s.rules.begin(), s.rules.end());
  s.rules.erase(std::unique(s.rules.begin(), s.rules.end()), s.rules.end());
  std::sort(s.flat_rules.begin(), s.flat_rules.end());
  s.flat_rules.erase(std::unique(s.flat_rules.begin(), s.flat_rules.end()), s.flat_rules.end());
  std::sort(s.head_triples.begin(), s.head_triples.end());
  s.head_triples.erase(std::unique(s.head_triples.begin(), s.head_triples.end()),
                       s.head_triples.end());
  std::sort(s.pixton_rules.begin(), s.pixton_rules.end());
  s.pixton_rules.erase(std::unique(s.pixton_rules.begin(), s.pixton_rules.end()),
                       s.pixton_rules.end());

  return normalize(std::move(s));
}

SplicingSystem parse_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_parse("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_system_text(buf.str());
}

std::string print_system(const SplicingSystem& s) {
  std::ostringstream out;
  out << "kind: " << kind_name(s.kind) << "\n";
  out << "alphabet:";
  for (Sym a : s.alphabet) out << " " << a;
  out << "\n";
  out << "initial:";
  if (s.is_circular()) {
    std::set<Word> reps;
    for (const CircWord& c : s.initial_circ) reps.insert(c.rep());
    for (const Word& w : sorted_shortlex(reps)) out << " ^" << word_token(w);
    for (const CircWord& c : s.dropped_circ) out << " ^" << word_token(c.rep());
  } else {
    for (const Word& w : sorted_shortlex(s.initial_words)) out << " " << word_token(w);
    for (const Word& w : s.dropped_words) out << " " << word_token(w);
  }
  out << "\n";
  for (const LinearRule& r : s.rules) {
    out << "rule: " << word_token(r.u1) << " # " << word_token(r.u2) << " $ "
        << word_token(r.u3) << " # " << word_token(r.u4) << "\n";
  }
  for (const FlatRule& r : s.flat_rules) {
    out << "rule: " << word_token(r.alpha) << " | " << word_token(r.beta) << " $ "
        << word_token(r.gamma) << " | " << word_token(r.delta) << "\n";
  }
  for (const HeadTriple& t : s.head_triples) {
    out << "rule: " << word_token(t.p) << " # " << word_token(t.x) << " # " << word_token(t.q)
        << "\n";
  }
  for (const PixtonRule& r : s.pixton_rules) {
    out << "rule: " << word_token(r.alpha) << " # " << word_token(r.alpha_prime) << " # "
        << word_token(r.beta) << " # " << word_token(r.beta_prime) << "\n";
  }
  if (s.self_splicing) out << "option: self-splicing\n";
  if (s.one_splicing) out << "option: one-splicing\n";
  return out.str();
}

}  // namespace splice
