#include "splice/automata.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>

#include "splice/error.hpp"

namespace splice {

namespace {

std::string sorted_unique(std::string s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

std::string merged_alphabet(const std::string& a, const std::string& b) {
  return sorted_unique(a + b);
}

}  // namespace

int Nfa::add_state() {
  delta.emplace_back();
  eps.emplace_back();
  return num_states++;
}

void Nfa::add_edge(int from, Sym a, int to) { delta[from][a].insert(to); }

void Nfa::add_eps(int from, int to) { eps[from].insert(to); }

int Dfa::sym_index(Sym a) const {
  auto it = std::find(alphabet.begin(), alphabet.end(), a);
  if (it == alphabet.end()) return -1;
  return static_cast<int>(it - alphabet.begin());
}

int Dfa::step(int s, Sym a) const {
  int i = sym_index(a);
  if (i < 0) throw_invalid(std::string("symbol '") + a + "' not in alphabet");
  return delta[s][i];
}

int Dfa::run(int s, std::string_view w) const {
  for (Sym a : w) s = step(s, a);
  return s;
}

bool Dfa::accepts(std::string_view w) const { return finals[run(initial, w)]; }

namespace {

std::set<int> eps_closure(const Nfa& n, std::set<int> states) {
  std::deque<int> work(states.begin(), states.end());
  while (!work.empty()) {
    int s = work.front();
    work.pop_front();
    for (int t : n.eps[s]) {
      if (states.insert(t).second) work.push_back(t);
    }
  }
  return states;
}

}  // namespace

Dfa determinize(const Nfa& n) {
  Dfa d;
  d.alphabet = sorted_unique(n.alphabet);
  const int k = static_cast<int>(d.alphabet.size());

  std::map<std::set<int>, int> index;
  std::vector<std::set<int>> subsets;
  auto intern = [&](std::set<int> s) {
    auto [it, fresh] = index.try_emplace(std::move(s), static_cast<int>(subsets.size()));
    if (fresh) subsets.push_back(it->first);
    return it->second;
  };

  int start = intern(eps_closure(n, n.initials));
  std::deque<int> work{start};
  std::vector<std::vector<int>> delta;
  delta.emplace_back(k, -1);

  while (!work.empty()) {
    int s = work.front();
    work.pop_front();
    std::set<int> cur = subsets[s];
    for (int ai = 0; ai < k; ++ai) {
      Sym a = d.alphabet[ai];
      std::set<int> next;
      for (int q : cur) {
        auto it = n.delta[q].find(a);
        if (it != n.delta[q].end()) next.insert(it->second.begin(), it->second.end());
      }
      next = eps_closure(n, std::move(next));
      std::size_t before = subsets.size();
      int t = intern(std::move(next));
      if (subsets.size() > before) {
        delta.emplace_back(k, -1);
        work.push_back(t);
      }
      delta[s][ai] = t;
    }
  }

  d.num_states = static_cast<int>(subsets.size());
  d.delta = std::move(delta);
  d.initial = start;
  d.finals.assign(d.num_states, false);
  for (int s = 0; s < d.num_states; ++s) {
    for (int q : subsets[s]) {
      if (n.finals.count(q)) {
        d.finals[s] = true;
        break;
      }
    }
  }
  return d;
}

namespace {

// Moore partition refinement; input must be complete.
Dfa minimize_moore(const Dfa& d) {
  const int k = static_cast<int>(d.alphabet.size());

  // Keep only states reachable from the initial one.
  std::vector<int> reach_id(d.num_states, -1);
  std::vector<int> order;
  reach_id[d.initial] = 0;
  order.push_back(d.initial);
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int ai = 0; ai < k; ++ai) {
      int t = d.delta[order[i]][ai];
      if (reach_id[t] < 0) {
        reach_id[t] = static_cast<int>(order.size());
        order.push_back(t);
      }
    }
  }
  const int n = static_cast<int>(order.size());

  std::vector<int> cls(n);
  for (int i = 0; i < n; ++i) cls[i] = d.finals[order[i]] ? 1 : 0;

  // Refine until the first-occurrence numbering of signatures is stable.
  while (true) {
    std::map<std::vector<int>, int> sig_index;
    std::vector<int> next_cls(n);
    for (int i = 0; i < n; ++i) {
      std::vector<int> sig;
      sig.reserve(k + 1);
      sig.push_back(cls[i]);
      for (int ai = 0; ai < k; ++ai) sig.push_back(cls[reach_id[d.delta[order[i]][ai]]]);
      auto [it, fresh] = sig_index.try_emplace(std::move(sig), static_cast<int>(sig_index.size()));
      (void)fresh;
      next_cls[i] = it->second;
    }
    if (next_cls == cls) break;
    cls = std::move(next_cls);
  }

  // Quotient automaton, then canonical BFS renumbering.
  int nclasses = *std::max_element(cls.begin(), cls.end()) + 1;
  std::vector<std::vector<int>> qdelta(nclasses, std::vector<int>(k, -1));
  std::vector<bool> qfinal(nclasses, false);
  for (int i = 0; i < n; ++i) {
    int c = cls[i];
    qfinal[c] = qfinal[c] || d.finals[order[i]];
    for (int ai = 0; ai < k; ++ai) qdelta[c][ai] = cls[reach_id[d.delta[order[i]][ai]]];
  }
  int qinit = cls[reach_id[d.initial]];

  std::vector<int> renum(nclasses, -1);
  std::vector<int> bfs{qinit};
  renum[qinit] = 0;
  for (std::size_t i = 0; i < bfs.size(); ++i) {
    for (int ai = 0; ai < k; ++ai) {
      int t = qdelta[bfs[i]][ai];
      if (renum[t] < 0) {
        renum[t] = static_cast<int>(bfs.size());
        bfs.push_back(t);
      }
    }
  }

  Dfa out;
  out.alphabet = d.alphabet;
  out.num_states = static_cast<int>(bfs.size());
  out.initial = 0;
  out.delta.assign(out.num_states, std::vector<int>(k, 0));
  out.finals.assign(out.num_states, false);
  for (std::size_t i = 0; i < bfs.size(); ++i) {
    int c = bfs[i];
    out.finals[i] = qfinal[c];
    for (int ai = 0; ai < k; ++ai) out.delta[i][ai] = renum[qdelta[c][ai]];
  }
  return out;
}

}  // namespace

Dfa minimize(const Dfa& d) { return minimize_moore(d); }

// ---------------------------------------------------------------------------
// Regex parsing (Thompson construction).

namespace {

struct Frag {
  int start;
  int accept;
};

class RegexParser {
 public:
  RegexParser(std::string_view expr, Nfa& nfa) : expr_(expr), nfa_(nfa) {}

  Frag parse() {
    Frag f = parse_union();
    skip_space();
    if (pos_ != expr_.size()) fail("unexpected character");
    return f;
  }

  std::string symbols() const { return syms_; }

 private:
  Frag parse_union() {
    Frag left = parse_cat();
    while (true) {
      skip_space();
      if (pos_ < expr_.size() && expr_[pos_] == '+' && starts_term_after_plus()) {
        ++pos_;
        Frag right = parse_cat();
        int s = nfa_.add_state();
        int a = nfa_.add_state();
        nfa_.add_eps(s, left.start);
        nfa_.add_eps(s, right.start);
        nfa_.add_eps(left.accept, a);
        nfa_.add_eps(right.accept, a);
        left = {s, a};
      } else {
        return left;
      }
    }
  }

  Frag parse_cat() {
    std::optional<Frag> acc;
    while (true) {
      skip_space();
      if (pos_ >= expr_.size()) break;
      char c = expr_[pos_];
      if (c == ')' || c == '+') break;
      Frag f = parse_factor();
      if (!acc) {
        acc = f;
      } else {
        nfa_.add_eps(acc->accept, f.start);
        acc = Frag{acc->start, f.accept};
      }
    }
    if (!acc) {
      int s = nfa_.add_state();
      return {s, s};  // empty concatenation denotes the empty word
    }
    return *acc;
  }

  Frag parse_factor() {
    Frag f = parse_atom();
    while (true) {
      skip_space();
      if (pos_ >= expr_.size()) break;
      char c = expr_[pos_];
      if (c == '*') {
        ++pos_;
        f = star(f);
      } else if (c == '+' && !starts_term_after_plus()) {
        ++pos_;
        int s = nfa_.add_state();
        int a = nfa_.add_state();
        nfa_.add_eps(s, f.start);
        nfa_.add_eps(f.accept, a);
        nfa_.add_eps(a, s);  // one or more repetitions
        f = {s, a};
      } else {
        break;
      }
    }
    return f;
  }

  Frag star(Frag f) {
    int s = nfa_.add_state();
    int a = nfa_.add_state();
    nfa_.add_eps(s, f.start);
    nfa_.add_eps(s, a);
    nfa_.add_eps(f.accept, a);
    nfa_.add_eps(a, s);
    return {s, a};
  }

  Frag parse_atom() {
    skip_space();
    if (pos_ >= expr_.size()) fail("expected symbol, '_' or '('");
    char c = expr_[pos_];
    if (c == '(') {
      ++pos_;
      Frag f = parse_union();
      skip_space();
      if (pos_ >= expr_.size() || expr_[pos_] != ')') fail("missing ')'");
      ++pos_;
      return f;
    }
    if (c == ')' || c == '*' || c == '+') fail("unexpected operator");
    ++pos_;
    if (c == '_') {
      int s = nfa_.add_state();
      return {s, s};
    }
    if (syms_.find(c) == std::string::npos) syms_.push_back(c);
    int s = nfa_.add_state();
    int a = nfa_.add_state();
    nfa_.add_edge(s, c, a);
    return {s, a};
  }

  // A '+' is the union operator when the next non-space character can start
  // a term; otherwise it is the postfix one-or-more operator.
  bool starts_term_after_plus() const {
    std::size_t p = pos_ + 1;
    while (p < expr_.size() && expr_[p] == ' ') ++p;
    if (p >= expr_.size()) return false;
    char c = expr_[p];
    return c != ')' && c != '*' && c != '+';
  }

  void skip_space() {
    while (pos_ < expr_.size() && expr_[pos_] == ' ') ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw_parse("regex error at position " + std::to_string(pos_) + ": " + msg);
  }

  std::string_view expr_;
  Nfa& nfa_;
  std::size_t pos_ = 0;
  std::string syms_;
};

}  // namespace

Dfa regex_to_dfa(std::string_view expr, std::optional<std::string> alphabet) {
  Nfa n;
  RegexParser parser(expr, n);
  Frag f = parser.parse();
  std::string syms = sorted_unique(parser.symbols());
  if (alphabet) {
    std::string a = sorted_unique(*alphabet);
    for (char c : syms) {
      if (a.find(c) == std::string::npos) {
        throw_parse(std::string("regex symbol '") + c + "' not in alphabet");
      }
    }
    n.alphabet = a;
  } else {
    n.alphabet = syms;
  }
  n.initials.insert(f.start);
  n.finals.insert(f.accept);
  return minimize(determinize(n));
}

// ---------------------------------------------------------------------------
// Boolean algebra on complete automata.

namespace {

Dfa product(const Dfa& a, const Dfa& b, bool (*combine)(bool, bool)) {
  if (a.alphabet != b.alphabet) {
    // Re-run both over the merged alphabet; missing symbols go to a sink.
    std::string merged = merged_alphabet(a.alphabet, b.alphabet);
    auto widen = [&](const Dfa& d) {
      Dfa w;
      w.alphabet = merged;
      w.num_states = d.num_states + 1;  // extra sink
      int sink = d.num_states;
      w.initial = d.initial;
      w.finals.assign(w.num_states, false);
      for (int s = 0; s < d.num_states; ++s) w.finals[s] = d.finals[s];
      w.delta.assign(w.num_states, std::vector<int>(merged.size(), sink));
      for (int s = 0; s < d.num_states; ++s) {
        for (std::size_t mi = 0; mi < merged.size(); ++mi) {
          int di = d.sym_index(merged[mi]);
          w.delta[s][mi] = di < 0 ? sink : d.delta[s][di];
        }
      }
      return w;
    };
    return product(widen(a), widen(b), combine);
  }

  const int k = static_cast<int>(a.alphabet.size());
  Dfa out;
  out.alphabet = a.alphabet;
  std::map<std::pair<int, int>, int> index;
  std::vector<std::pair<int, int>> pairs;
  auto intern = [&](std::pair<int, int> p) {
    auto [it, fresh] = index.try_emplace(p, static_cast<int>(pairs.size()));
    if (fresh) pairs.push_back(p);
    return it->second;
  };
  int start = intern({a.initial, b.initial});
  out.delta.emplace_back(k, -1);
  std::deque<int> work{start};
  while (!work.empty()) {
    int s = work.front();
    work.pop_front();
    auto [pa, pb] = pairs[s];
    for (int ai = 0; ai < k; ++ai) {
      std::size_t before = pairs.size();
      int t = intern({a.delta[pa][ai], b.delta[pb][ai]});
      if (pairs.size() > before) {
        out.delta.emplace_back(k, -1);
        work.push_back(t);
      }
      out.delta[s][ai] = t;
    }
  }
  out.num_states = static_cast<int>(pairs.size());
  out.initial = start;
  out.finals.assign(out.num_states, false);
  for (int s = 0; s < out.num_states; ++s) {
    out.finals[s] = combine(a.finals[pairs[s].first], b.finals[pairs[s].second]);
  }
  return minimize(out);
}

}  // namespace

Dfa complement(const Dfa& d) {
  Dfa out = d;
  for (std::size_t i = 0; i < out.finals.size(); ++i) out.finals[i] = !out.finals[i];
  return minimize(out);
}

Dfa intersect(const Dfa& a, const Dfa& b) {
  return product(a, b, [](bool x, bool y) { return x && y; });
}

Dfa unite(const Dfa& a, const Dfa& b) {
  return product(a, b, [](bool x, bool y) { return x || y; });
}

Dfa difference(const Dfa& a, const Dfa& b) {
  return product(a, b, [](bool x, bool y) { return x && !y; });
}

bool is_empty(const Dfa& d) { return !shortest_word(d).has_value(); }

bool dfa_equal(const Dfa& a, const Dfa& b) {
  if (sorted_unique(a.alphabet) != sorted_unique(b.alphabet)) {
    throw_invalid("dfa_equal: alphabet mismatch");
  }
  return minimize(a) == minimize(b);
}

std::optional<Word> shortest_word(const Dfa& d) {
  std::vector<std::optional<Word>> best(d.num_states);
  std::deque<int> work;
  best[d.initial] = Word();
  work.push_back(d.initial);
  while (!work.empty()) {
    int s = work.front();
    work.pop_front();
    if (d.finals[s]) return best[s];
    for (std::size_t ai = 0; ai < d.alphabet.size(); ++ai) {
      int t = d.delta[s][ai];
      if (!best[t]) {
        best[t] = *best[s] + d.alphabet[ai];
        work.push_back(t);
      }
    }
  }
  return std::nullopt;
}

namespace {

std::vector<bool> coaccessible(const Dfa& d) {
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

std::vector<bool> reachable(const Dfa& d) {
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

}  // namespace

std::pair<bool, std::size_t> finiteness(const Dfa& d) {
  std::vector<bool> useful(d.num_states);
  auto reach = reachable(d);
  auto co = coaccessible(d);
  for (int s = 0; s < d.num_states; ++s) useful[s] = reach[s] && co[s];

  // Cycle detection restricted to useful states.
  std::vector<int> color(d.num_states, 0);
  bool cyclic = false;
  auto dfs = [&](auto&& self, int s) -> void {
    color[s] = 1;
    for (std::size_t ai = 0; ai < d.alphabet.size() && !cyclic; ++ai) {
      int t = d.delta[s][ai];
      if (!useful[t]) continue;
      if (color[t] == 1) {
        cyclic = true;
      } else if (color[t] == 0) {
        self(self, t);
      }
    }
    color[s] = 2;
  };
  if (useful[d.initial]) dfs(dfs, d.initial);
  if (cyclic) return {false, 0};

  // Count accepted words over the acyclic useful part.
  std::map<int, std::size_t> memo;
  auto count = [&](auto&& self, int s) -> std::size_t {
    auto it = memo.find(s);
    if (it != memo.end()) return it->second;
    std::size_t total = d.finals[s] ? 1 : 0;
    for (std::size_t ai = 0; ai < d.alphabet.size(); ++ai) {
      int t = d.delta[s][ai];
      if (useful[t]) total += self(self, t);
    }
    memo[s] = total;
    return total;
  };
  std::size_t n = useful[d.initial] ? count(count, d.initial) : 0;
  return {true, n};
}

std::vector<Word> enumerate_dfa(const Dfa& d, std::size_t maxlen) {
  // Distance from each state to the nearest final state, for pruning.
  std::vector<std::size_t> dist(d.num_states, SIZE_MAX);
  std::deque<int> work;
  std::vector<std::vector<int>> rev(d.num_states);
  for (int s = 0; s < d.num_states; ++s) {
    for (std::size_t ai = 0; ai < d.alphabet.size(); ++ai) rev[d.delta[s][ai]].push_back(s);
  }
  for (int s = 0; s < d.num_states; ++s) {
    if (d.finals[s]) {
      dist[s] = 0;
      work.push_back(s);
    }
  }
  while (!work.empty()) {
    int s = work.front();
    work.pop_front();
    for (int p : rev[s]) {
      if (dist[p] == SIZE_MAX) {
        dist[p] = dist[s] + 1;
        work.push_back(p);
      }
    }
  }

  std::vector<Word> out;
  Word cur;
  auto dfs = [&](auto&& self, int s) -> void {
    if (d.finals[s]) out.push_back(cur);
    if (cur.size() == maxlen) return;
    for (std::size_t ai = 0; ai < d.alphabet.size(); ++ai) {
      int t = d.delta[s][ai];
      if (dist[t] == SIZE_MAX || cur.size() + 1 + dist[t] > maxlen) continue;
      cur.push_back(d.alphabet[ai]);
      self(self, t);
      cur.pop_back();
    }
  };
  dfs(dfs, d.initial);
  std::stable_sort(out.begin(), out.end(), shortlex_less);
  return out;
}

Nfa cyclic_closure(const Dfa& d) {
  // Union over anchor states q of: (words q -> final) . (words initial -> q).
  Nfa n;
  n.alphabet = d.alphabet;
  const int ns = d.num_states;
  // state layout: suffix copy (q, p) then prefix copy (q, p)
  auto suf = [&](int q, int p) { return q * ns + p; };
  auto pre = [&](int q, int p) { return ns * ns + q * ns + p; };
  for (int i = 0; i < 2 * ns * ns; ++i) n.add_state();
  for (int q = 0; q < ns; ++q) {
    n.initials.insert(suf(q, q));
    n.finals.insert(pre(q, q));
    for (int p = 0; p < ns; ++p) {
      for (std::size_t ai = 0; ai < d.alphabet.size(); ++ai) {
        int t = d.delta[p][ai];
        n.add_edge(suf(q, p), d.alphabet[ai], suf(q, t));
        n.add_edge(pre(q, p), d.alphabet[ai], pre(q, t));
      }
      if (d.finals[p]) n.add_eps(suf(q, p), pre(q, d.initial));
    }
  }
  return n;
}

std::string to_dot(const Dfa& d) {
  std::string out = "digraph dfa {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (int s = 0; s < d.num_states; ++s) {
    if (d.finals[s]) out += "  q" + std::to_string(s) + " [shape=doublecircle];\n";
  }
  out += "  start [shape=point];\n  start -> q" + std::to_string(d.initial) + ";\n";
  for (int s = 0; s < d.num_states; ++s) {
    for (std::size_t ai = 0; ai < d.alphabet.size(); ++ai) {
      out += "  q" + std::to_string(s) + " -> q" + std::to_string(d.delta[s][ai]) +
             " [label=\"" + d.alphabet[ai] + "\"];\n";
    }
  }
  out += "}\n";
  return out;
}

std::string to_dot(const Nfa& n) {
  std::string out = "digraph nfa {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (int s : n.finals) out += "  q" + std::to_string(s) + " [shape=doublecircle];\n";
  int idx = 0;
  for (int s : n.initials) {
    out += "  start" + std::to_string(idx) + " [shape=point];\n  start" + std::to_string(idx) +
           " -> q" + std::to_string(s) + ";\n";
    ++idx;
  }
  for (int s = 0; s < n.num_states; ++s) {
    for (const auto& [a, tos] : n.delta[s]) {
      for (int t : tos) {
        out += "  q" + std::to_string(s) + " -> q" + std::to_string(t) + " [label=\"" +
               std::string(1, a) + "\"];\n";
      }
    }
    for (int t : n.eps[s]) {
      out += "  q" + std::to_string(s) + " -> q" + std::to_string(t) + " [label=\"eps\"];\n";
    }
  }
  out += "}\n";
  return out;
}

}  // namespace splice
