#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>

#include "splice/automata.hpp"
#include "splice/error.hpp"

namespace splice {

// ---------------------------------------------------------------------------
// Unavoidable sets via a factor-matching automaton.

namespace {

// Aho-Corasick automaton for the pattern set; state -1 marks "a factor of Y
// has been seen" and absorbs.
struct FactorAutomaton {
  std::string alphabet;
  std::vector<std::map<Sym, int>> next;  // avoidance transitions, -1 = dead
  int root = 0;

  explicit FactorAutomaton(const std::set<Word>& y, const std::string& alphabet_in) {
    alphabet = alphabet_in;
    // trie
    std::vector<std::map<Sym, int>> trie(1);
    std::vector<bool> match(1, false);
    for (const Word& w : y) {
      int s = 0;
      for (Sym a : w) {
        auto it = trie[s].find(a);
        if (it == trie[s].end()) {
          trie.emplace_back();
          match.push_back(false);
          it = trie[s].emplace(a, static_cast<int>(trie.size()) - 1).first;
        }
        s = it->second;
      }
      match[s] = true;
    }
    // goto function with fail links, propagating match through suffixes
    std::vector<int> fail(trie.size(), 0);
    std::vector<std::map<Sym, int>> go(trie.size());
    std::deque<int> work;
    for (Sym a : alphabet) {
      auto it = trie[0].find(a);
      int t = it == trie[0].end() ? 0 : it->second;
      go[0][a] = t;
      if (t != 0) {
        fail[t] = 0;
        work.push_back(t);
      }
    }
    while (!work.empty()) {
      int s = work.front();
      work.pop_front();
      match[s] = match[s] || match[fail[s]];
      for (Sym a : alphabet) {
        auto it = trie[s].find(a);
        if (it != trie[s].end()) {
          int t = it->second;
          fail[t] = go[fail[s]][a];
          work.push_back(t);
          go[s][a] = t;
        } else {
          go[s][a] = go[fail[s]][a];
        }
      }
    }
    next.assign(trie.size(), {});
    for (std::size_t s = 0; s < trie.size(); ++s) {
      for (Sym a : alphabet) {
        int t = go[s][a];
        next[s][a] = match[t] ? -1 : t;
      }
    }
  }
};

}  // namespace

UnavoidResult is_unavoidable(const std::set<Word>& y, const std::string& alphabet) {
  if (y.empty()) throw_invalid("is_unavoidable: empty pattern set");
  for (const Word& w : y) {
    if (w.empty()) throw_invalid("is_unavoidable: empty word in pattern set");
    for (Sym a : w) {
      if (alphabet.find(a) == std::string::npos) {
        throw_invalid(std::string("is_unavoidable: symbol '") + a + "' not in alphabet");
      }
    }
  }

  FactorAutomaton fa(y, alphabet);
  const int n = static_cast<int>(fa.next.size());

  // Reachable avoidance states.
  std::vector<bool> reach(n, false);
  std::deque<int> work{fa.root};
  reach[fa.root] = true;
  while (!work.empty()) {
    int s = work.front();
    work.pop_front();
    for (const auto& [a, t] : fa.next[s]) {
      (void)a;
      if (t >= 0 && !reach[t]) {
        reach[t] = true;
        work.push_back(t);
      }
    }
  }

  // Cycle search (iterative DFS in alphabet order, deterministic).
  std::vector<int> color(n, 0);
  std::vector<int> parent(n, -1);
  std::vector<Sym> parent_sym(n, 0);
  struct Frame {
    int state;
    std::size_t next_sym;
  };
  std::vector<Frame> stack;
  UnavoidResult res;
  stack.push_back({fa.root, 0});
  color[fa.root] = 1;
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next_sym == fa.alphabet.size()) {
      color[f.state] = 2;
      stack.pop_back();
      continue;
    }
    Sym a = fa.alphabet[f.next_sym++];
    int t = fa.next[f.state].at(a);
    if (t < 0) continue;
    if (color[t] == 1) {
      // cycle: walk back from f.state to t
      Word cyc(1, a);
      int s = f.state;
      while (s != t) {
        cyc.push_back(parent_sym[s]);
        s = parent[s];
      }
      std::reverse(cyc.begin(), cyc.end());
      Word prefix;
      while (s != fa.root) {
        prefix.push_back(parent_sym[s]);
        s = parent[s];
      }
      std::reverse(prefix.begin(), prefix.end());
      res.unavoidable = false;
      res.prefix = prefix;
      res.cycle = cyc;
      return res;
    }
    if (color[t] == 0) {
      color[t] = 1;
      parent[t] = f.state;
      parent_sym[t] = a;
      stack.push_back({t, 0});
    }
  }

  // Acyclic: k0 = longest avoiding word = longest path from the root.
  std::vector<std::int64_t> longest(n, -1);
  auto dp = [&](auto&& self, int s) -> std::int64_t {
    if (longest[s] >= 0) return longest[s];
    std::int64_t best = 0;
    for (const auto& [a, t] : fa.next[s]) {
      (void)a;
      if (t >= 0) best = std::max(best, self(self, t) + 1);
    }
    longest[s] = best;
    return best;
  };
  res.unavoidable = true;
  res.k0 = static_cast<std::size_t>(dp(dp, fa.root));
  return res;
}

// ---------------------------------------------------------------------------
// Constants.

namespace {

std::vector<int> word_action(const Dfa& d, const Word& w) {
  std::vector<int> f(d.num_states);
  for (int s = 0; s < d.num_states; ++s) f[s] = d.run(s, w);
  return f;
}

std::vector<bool> dfa_reachable(const Dfa& d) {
  std::vector<bool> r(d.num_states, false);
  std::deque<int> work{d.initial};
  r[d.initial] = true;
  while (!work.empty()) {
    int s = work.front();
    work.pop_front();
    for (std::size_t ai = 0; ai < d.alphabet.size(); ++ai) {
      int t = d.delta[s][ai];
      if (!r[t]) {
        r[t] = true;
        work.push_back(t);
      }
    }
  }
  return r;
}

std::vector<bool> dfa_coaccessible(const Dfa& d) {
  std::vector<std::vector<int>> rev(d.num_states);
  for (int s = 0; s < d.num_states; ++s) {
    for (std::size_t ai = 0; ai < d.alphabet.size(); ++ai) rev[d.delta[s][ai]].push_back(s);
  }
  std::vector<bool> co(d.num_states, false);
  std::deque<int> work;
  for (int s = 0; s < d.num_states; ++s) {
    if (d.finals[s]) {
      co[s] = true;
      work.push_back(s);
    }
  }
  while (!work.empty()) {
    int s = work.front();
    work.pop_front();
    for (int p : rev[s]) {
      if (!co[p]) {
        co[p] = true;
        work.push_back(p);
      }
    }
  }
  return co;
}

// Rectangle test for a transition action on a minimal automaton: all images
// f(p), over reachable p with co-accessible image, must coincide.
ConstantResult rectangle_test(const Dfa& min, const std::vector<int>& action,
                              const std::vector<bool>& reach, const std::vector<bool>& co) {
  int image = -1;
  bool non_vacuous = false;
  for (int p = 0; p < min.num_states; ++p) {
    if (!reach[p]) continue;
    int q = action[p];
    if (!co[q]) continue;
    non_vacuous = true;
    if (image < 0) {
      image = q;
    } else if (image != q) {
      return {false, false};
    }
  }
  if (!non_vacuous) return {true, true};
  return {true, false};
}

}  // namespace

ConstantResult is_constant(const Dfa& d, const Word& w) {
  for (Sym a : w) {
    if (d.sym_index(a) < 0) {
      throw_invalid(std::string("is_constant: symbol '") + a + "' not in alphabet");
    }
  }
  Dfa min = minimize(d);
  auto reach = dfa_reachable(min);
  auto co = dfa_coaccessible(min);
  return rectangle_test(min, word_action(min, w), reach, co);
}

std::optional<Word> find_constant(const Dfa& d) {
  Dfa min = minimize(d);
  auto reach = dfa_reachable(min);
  auto co = dfa_coaccessible(min);

  // Breadth-first walk of the transition monoid in shortlex word order; the
  // first word reaching each transformation is its canonical name.
  std::vector<int> identity(min.num_states);
  for (int s = 0; s < min.num_states; ++s) identity[s] = s;

  std::map<std::vector<int>, Word> seen;
  std::deque<std::pair<std::vector<int>, Word>> work;
  seen.emplace(identity, Word());
  work.emplace_back(identity, Word());

  const std::size_t monoid_cap = 2'000'000;
  while (!work.empty()) {
    auto [f, w] = work.front();
    work.pop_front();
    ConstantResult r = rectangle_test(min, f, reach, co);
    if (r.constant && !r.vacuous) return w;
    for (std::size_t ai = 0; ai < min.alphabet.size(); ++ai) {
      std::vector<int> g(min.num_states);
      for (int s = 0; s < min.num_states; ++s) g[s] = min.delta[f[s]][ai];
      Word wa = w + min.alphabet[ai];
      if (seen.size() >= monoid_cap) throw_internal("find_constant: monoid too large");
      if (seen.emplace(g, wa).second) work.emplace_back(std::move(g), std::move(wa));
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Unary spectra.

bool UnarySpectrum::contains(std::size_t n) const {
  if (n < n0) return explicit_members.count(n) > 0;
  return residues.count(n % period) > 0;
}

UnarySpectrum unary_spectrum(const Dfa& d) {
  if (d.alphabet.size() != 1) throw_invalid("unary_spectrum: alphabet size must be 1");
  Dfa min = minimize(d);

  // Walk a^0, a^1, ... until a state repeats: tail + cycle.
  std::vector<int> first_seen(min.num_states, -1);
  std::vector<int> path;
  int s = min.initial;
  while (first_seen[s] < 0) {
    first_seen[s] = static_cast<int>(path.size());
    path.push_back(s);
    s = min.delta[s][0];
  }
  std::size_t tail = static_cast<std::size_t>(first_seen[s]);
  std::size_t cycle = path.size() - tail;

  UnarySpectrum out;
  out.n0 = tail;
  out.period = cycle;
  for (std::size_t n = 0; n < tail; ++n) {
    if (min.finals[path[n]]) out.explicit_members.insert(n);
  }
  for (std::size_t n = tail; n < tail + cycle; ++n) {
    if (min.finals[path[n]]) out.residues.insert(n % cycle);
  }
  return out;
}

Dfa spectrum_to_dfa(const UnarySpectrum& s, Sym letter) {
  // Chain of n0 states followed by a cycle of `period` states.
  std::size_t tail = s.n0;
  std::size_t cyc = std::max<std::size_t>(s.period, 1);
  Dfa d;
  d.alphabet = std::string(1, letter);
  d.num_states = static_cast<int>(tail + cyc);
  d.initial = 0;
  d.delta.assign(d.num_states, std::vector<int>(1, 0));
  d.finals.assign(d.num_states, false);
  for (std::size_t n = 0; n < tail + cyc; ++n) {
    if (n + 1 < tail + cyc) {
      d.delta[n][0] = static_cast<int>(n + 1);
    } else {
      // close the cycle back to position tail + ((n+1-tail) mod cyc)
      d.delta[n][0] = static_cast<int>(tail + ((n + 1 - tail) % cyc));
    }
    if (n < tail) {
      d.finals[n] = s.explicit_members.count(n) > 0;
    } else {
      d.finals[n] = s.residues.count(n % cyc) > 0;
    }
  }
  return minimize(d);
}

}  // namespace splice
