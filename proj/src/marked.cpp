#include <algorithm>
#include <array>
#include <deque>

#include "splice/characterize.hpp"
#include "splice/error.hpp"

namespace splice {

void MarkedSystem::add_edge(Sym a, Sym b) {
  if (a > b) std::swap(a, b);
  edges.insert({a, b});
}

bool MarkedSystem::has_edge(Sym a, Sym b) const {
  if (a > b) std::swap(a, b);
  return edges.count({a, b}) > 0;
}

bool is_transitive_subset(const MarkedSystem& m, const std::set<Sym>& j) {
  if (j.empty()) return false;
  if (j.size() == 1) return m.has_loop(*j.begin());
  // connectivity of the induced subgraph (self-loops do not connect)
  std::set<Sym> seen;
  std::deque<Sym> work{*j.begin()};
  seen.insert(*j.begin());
  while (!work.empty()) {
    Sym a = work.front();
    work.pop_front();
    for (Sym b : j) {
      if (b != a && !seen.count(b) && m.has_edge(a, b)) {
        seen.insert(b);
        work.push_back(b);
      }
    }
  }
  return seen.size() == j.size();
}

std::vector<MarkedSystem> marked_decompose(const MarkedSystem& m) {
  std::vector<MarkedSystem> out;
  std::set<Sym> remaining(m.letters.begin(), m.letters.end());
  while (!remaining.empty()) {
    Sym seed = *remaining.begin();
    std::set<Sym> comp{seed};
    std::deque<Sym> work{seed};
    while (!work.empty()) {
      Sym a = work.front();
      work.pop_front();
      for (Sym b : remaining) {
        if (b != a && !comp.count(b) && m.has_edge(a, b)) {
          comp.insert(b);
          work.push_back(b);
        }
      }
    }
    MarkedSystem sub;
    for (Sym a : comp) {
      sub.letters += a;
      remaining.erase(a);
    }
    for (const auto& [a, b] : m.edges) {
      if (comp.count(a) && comp.count(b)) sub.edges.insert({a, b});
    }
    out.push_back(std::move(sub));
  }
  return out;
}

namespace {

// d(a,b) within the subset j: number of chain vertices, so d(a,a) = 1 and
// adjacent letters have d = 2. Returns 0 when unreachable.
std::size_t chain_distance(const MarkedSystem& m, const std::set<Sym>& j, Sym a, Sym b) {
  if (a == b) return 1;
  std::map<Sym, std::size_t> dist;
  dist[a] = 1;
  std::deque<Sym> work{a};
  while (!work.empty()) {
    Sym x = work.front();
    work.pop_front();
    for (Sym y : j) {
      if (y != x && !dist.count(y) && m.has_edge(x, y)) {
        dist[y] = dist[x] + 1;
        if (y == b) return dist[y];
        work.push_back(y);
      }
    }
  }
  return 0;
}

std::size_t subset_diameter(const MarkedSystem& m, const std::set<Sym>& j) {
  std::size_t best = 0;
  for (Sym a : j) {
    for (Sym b : j) {
      best = std::max(best, chain_distance(m, j, a, b));
    }
  }
  return best;
}

// First induced loop-free path on 4 vertices, in lexicographic subset
// order; returned in path order with the smaller endpoint first.
std::optional<std::vector<Sym>> find_p4(const MarkedSystem& m) {
  const std::string& ls = m.letters;
  const std::size_t n = ls.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        for (std::size_t l = k + 1; l < n; ++l) {
          std::array<Sym, 4> v{ls[i], ls[j], ls[k], ls[l]};
          // count induced edges ignoring loops; a P4 has exactly 3 edges
          std::vector<std::pair<Sym, Sym>> e;
          for (int x = 0; x < 4; ++x) {
            for (int y = x + 1; y < 4; ++y) {
              if (m.has_edge(v[x], v[y])) e.push_back({v[x], v[y]});
            }
          }
          if (e.size() != 3) continue;
          std::map<Sym, int> deg;
          for (auto& [a, b] : e) {
            ++deg[a];
            ++deg[b];
          }
          if (deg.size() != 4) continue;  // a triangle plus isolated vertex
          // degrees 1,2,2,1 means a path; find the endpoints
          std::vector<Sym> ends;
          for (auto& [a, d] : deg) {
            if (d == 1) ends.push_back(a);
          }
          if (ends.size() != 2) continue;
          // walk the path from the smaller endpoint
          std::vector<Sym> path{std::min(ends[0], ends[1])};
          std::set<Sym> used{path[0]};
          while (path.size() < 4) {
            for (Sym c : v) {
              if (!used.count(c) && m.has_edge(path.back(), c)) {
                path.push_back(c);
                used.insert(c);
                break;
              }
            }
          }
          return path;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

Diameters marked_diameters(const MarkedSystem& m) {
  if (m.letters.size() > 20) throw_invalid("marked_diameters: too many letters");
  Diameters out;
  for (const MarkedSystem& comp : marked_decompose(m)) {
    std::set<Sym> all(comp.letters.begin(), comp.letters.end());
    if (!is_transitive_subset(comp, all)) continue;  // loop-free singleton
    out.delta = std::max(out.delta, subset_diameter(comp, all));
    // exhaustive max over transitive subsets
    const std::string& ls = comp.letters;
    const std::size_t n = ls.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      std::set<Sym> j;
      for (std::size_t i = 0; i < n; ++i) {
        if ((mask >> i) & 1) j.insert(ls[i]);
      }
      if (!is_transitive_subset(comp, j)) continue;
      out.delta_local = std::max(out.delta_local, subset_diameter(comp, j));
    }
  }

  // Cross-check the fast path: delta_local >= 4 iff some 4-subset induces a
  // path (self-loops ignored).
  bool has_p4 = find_p4(m).has_value();
  if (has_p4 != (out.delta_local >= 4)) {
    throw_internal("marked_diameters: P4 fast path disagrees with exhaustive search");
  }
  return out;
}

MarkedRegularity marked_is_regular(const MarkedSystem& m) {
  MarkedRegularity out;
  auto p4 = find_p4(m);
  out.regular = !p4.has_value();
  if (p4) out.p4 = *p4;
  return out;
}

Dfa marked_automaton(const MarkedSystem& m) {
  MarkedRegularity reg = marked_is_regular(m);
  if (!reg.regular) throw_invalid("marked_automaton: system is not regular");
  if (m.letters.size() > 8) throw_invalid("marked_automaton: too many letters");

  Nfa n;
  n.alphabet = m.letters;

  // Length-one words of I.
  int root = n.add_state();
  n.initials.insert(root);
  for (Sym a : m.letters) {
    int acc = n.add_state();
    n.add_edge(root, a, acc);
    n.finals.insert(acc);
  }

  // For every transitive subset J: words over J containing every letter
  // of J, tracked as a subset automaton.
  const std::string& ls = m.letters;
  const std::size_t nl = ls.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << nl); ++mask) {
    std::set<Sym> j;
    for (std::size_t i = 0; i < nl; ++i) {
      if ((mask >> i) & 1) j.insert(ls[i]);
    }
    if (!is_transitive_subset(m, j)) continue;
    std::vector<Sym> jv(j.begin(), j.end());
    std::map<std::size_t, int> states;  // seen-subset -> nfa state
    auto state_of = [&](std::size_t seen) {
      auto it = states.find(seen);
      if (it != states.end()) return it->second;
      int s = n.add_state();
      states[seen] = s;
      return s;
    };
    std::size_t full = (std::size_t{1} << jv.size()) - 1;
    int start = state_of(0);
    n.add_eps(root, start);
    for (std::size_t seen = 0; seen <= full; ++seen) {
      int s = state_of(seen);
      for (std::size_t i = 0; i < jv.size(); ++i) {
        n.add_edge(s, jv[i], state_of(seen | (std::size_t{1} << i)));
      }
    }
    n.finals.insert(state_of(full));
  }

  return minimize(determinize(n));
}

std::optional<MarkedSystem> as_marked(const SplicingSystem& s_in) {
  if (s_in.kind != Kind::circular_paun) return std::nullopt;
  SplicingSystem s = normalize(s_in);
  auto pos = cssh_positions(s);
  if (!pos || *pos != std::make_pair(1, 3)) return std::nullopt;
  // I must consist of single letters and coincide with A and SITES(R).
  std::set<Sym> initial_letters;
  for (const CircWord& c : s.initial_circ) {
    if (c.size() != 1) return std::nullopt;
    initial_letters.insert(c.rep()[0]);
  }
  std::set<Sym> alphabet(s.alphabet.begin(), s.alphabet.end());
  if (initial_letters != alphabet) return std::nullopt;
  if (cssh_site_letters(s) != alphabet) return std::nullopt;
  MarkedSystem m;
  m.letters = s.alphabet;
  for (const LinearRule& r : s.rules) m.add_edge(r.u1[0], r.u3[0]);
  return m;
}

ExtendedReduction extended_reduce(const SplicingSystem& s_in) {
  SplicingSystem s = normalize(s_in);
  auto pos = cssh_positions(s);
  if (!pos || *pos != std::make_pair(1, 3)) {
    throw_unsupported("extended_reduce: (1,3)-CSSH system expected");
  }
  std::set<Sym> sites = cssh_site_letters(s);

  ExtendedReduction out;
  for (const CircWord& c : s.initial_circ) {
    Sym site = 0;
    std::size_t occurrences = 0;
    for (Sym a : c.rep()) {
      if (sites.count(a)) {
        site = a;
        ++occurrences;
      }
    }
    if (occurrences != 1) {
      throw_invalid("extended_reduce: initial word '" + c.rep() +
                    "' must contain exactly one site letter occurrence");
    }
    if (out.decoration.count(site)) {
      throw_invalid(std::string("extended_reduce: site letter '") + site +
                    "' is shared by two initial words");
    }
    // rotation ending with the site letter
    Word block;
    for (const Word& rot : rotations(c.rep())) {
      if (rot.back() == site) {
        block = rot;
        break;
      }
    }
    out.decoration[site] = block;
    out.marked.letters += site;
  }
  std::sort(out.marked.letters.begin(), out.marked.letters.end());
  for (const LinearRule& r : s.rules) out.marked.add_edge(r.u1[0], r.u3[0]);
  return out;
}

Word decorate(const std::map<Sym, Word>& decoration, const Word& w) {
  Word out;
  for (Sym a : w) {
    auto it = decoration.find(a);
    if (it == decoration.end()) throw_invalid("decorate: letter without decoration");
    out += it->second;
  }
  return out;
}

std::string to_dot(const MarkedSystem& m) {
  std::string out = "graph marked {\n";
  for (Sym a : m.letters) out += std::string("  ") + a + ";\n";
  for (const auto& [a, b] : m.edges) {
    out += std::string("  ") + a + " -- " + b + ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace splice
