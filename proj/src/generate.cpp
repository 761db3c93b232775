#include <algorithm>

#include "splice/engine.hpp"
#include "splice/error.hpp"

namespace splice {

std::set<CircWord> GenerationResult::circ_words() const {
  std::set<CircWord> out;
  for (const Word& w : words) out.insert(CircWord::of(w));
  return out;
}

namespace {

// Children of an ordered pair, as plain words (canonical reps for circular
// kinds), cut at work_len. Non-shrinking kinds get their length law checked.
void pair_children(const SplicingSystem& s, const Word& a, const Word& b, std::size_t work_len,
                   std::set<Word>& out) {
  // flat, circular Paun and head steps are length-additive, so pairs that
  // are too long in total can never contribute
  bool additive = s.kind == Kind::flat || s.kind == Kind::circular_paun ||
                  s.kind == Kind::circular_head;
  if (additive && a.size() + b.size() > work_len) return;

  auto keep = [&](const Word& w, bool check_length_law) {
    if (check_length_law && w.size() != a.size() + b.size()) {
      throw_internal("generate: length law violated");
    }
    if (w.size() <= work_len) out.insert(w);
  };

  switch (s.kind) {
    case Kind::linear: {
      for (const LinearRule& r : s.rules) {
        for (const auto& [w1, w2] : linear_step(r, a, b)) {
          keep(w1, false);
          if (!s.one_splicing) keep(w2, false);
        }
      }
      break;
    }
    case Kind::flat: {
      for (const FlatRule& r : s.flat_rules) {
        for (const Word& w : flat_step(r, a, b)) keep(w, true);
      }
      break;
    }
    case Kind::circular_paun: {
      CircWord ca = CircWord::of(a), cb = CircWord::of(b);
      for (const LinearRule& r : s.rules) {
        for (const CircWord& w : circular_step(r, ca, cb)) keep(w.rep(), true);
      }
      break;
    }
    case Kind::circular_head: {
      CircWord ca = CircWord::of(a), cb = CircWord::of(b);
      for (const HeadTriple& t1 : s.head_triples) {
        for (const HeadTriple& t2 : s.head_triples) {
          if (t1.x != t2.x) continue;
          for (const CircWord& w : head_circ_step(t1, t2, ca, cb)) keep(w.rep(), true);
        }
      }
      break;
    }
    case Kind::circular_pixton: {
      CircWord ca = CircWord::of(a), cb = CircWord::of(b);
      for (const PixtonRule& r : s.pixton_rules) {
        for (const CircWord& w : pixton_circ_step(r, ca, cb)) keep(w.rep(), false);
      }
      break;
    }
  }
}

void self_children(const SplicingSystem& s, const Word& a, std::size_t work_len,
                   std::set<Word>& out) {
  if (s.kind != Kind::circular_paun || !s.self_splicing) return;
  CircWord ca = CircWord::of(a);
  for (const LinearRule& r : s.rules) {
    for (const auto& [w1, w2] : self_splice_step(r, ca)) {
      if (w1.size() <= work_len) out.insert(w1.rep());
      if (w2.size() <= work_len) out.insert(w2.rep());
    }
  }
}

// One sigma' pass restricted to pairs touching the frontier. When probing,
// stops at the first word outside `known`.
bool splice_round(const SplicingSystem& s, const std::set<Word>& known,
                  const std::vector<Word>& frontier, std::size_t work_len, std::set<Word>* out) {
  std::set<Word> children;
  bool found_new = false;
  auto flush = [&]() {
    for (const Word& w : children) {
      if (!known.count(w)) {
        found_new = true;
        if (out) out->insert(w);
      }
    }
    children.clear();
    return !out && found_new;  // probing: stop early
  };

  std::set<Word> frontier_set(frontier.begin(), frontier.end());
  for (const Word& f : frontier) {
    for (const Word& w : known) {
      pair_children(s, f, w, work_len, children);
      if (flush()) return true;
      if (!frontier_set.count(w)) {  // avoid doing frontier pairs twice
        pair_children(s, w, f, work_len, children);
        if (flush()) return true;
      }
    }
    self_children(s, f, work_len, children);
    if (flush()) return true;
  }
  return found_new;
}

}  // namespace

GenerationResult generate(const SplicingSystem& s, const GenerationBudget& b) {
  if (!s.normalized) throw_invalid("generate: system is not normalized");
  if (b.max_rounds == 0 || b.work_len == 0) throw_invalid("generate: budget is zero");
  if (b.report_len > b.work_len) throw_invalid("generate: report_len exceeds work_len");

  GenerationResult res;
  res.circular = s.is_circular();

  std::set<Word> known;
  if (res.circular) {
    for (const CircWord& c : s.initial_circ) {
      if (c.size() <= b.work_len) known.insert(c.rep());
    }
  } else {
    for (const Word& w : s.initial_words) {
      if (w.size() <= b.work_len) known.insert(w);
    }
  }

  std::vector<Word> frontier(known.begin(), known.end());
  while (true) {
    if (res.rounds_used == b.max_rounds) {
      // Round budget exhausted: probe whether one more round would add
      // anything, so the saturation flag stays truthful.
      res.saturated = !splice_round(s, known, frontier, b.work_len, nullptr);
      break;
    }
    std::set<Word> fresh;
    splice_round(s, known, frontier, b.work_len, &fresh);
    if (fresh.empty()) {
      res.saturated = true;
      break;
    }
    frontier.assign(fresh.begin(), fresh.end());
    known.insert(fresh.begin(), fresh.end());
    ++res.rounds_used;
  }

  bool non_shrinking = s.kind == Kind::flat || s.kind == Kind::circular_head ||
                       (s.kind == Kind::circular_paun && !s.self_splicing);
  res.exact = res.saturated && non_shrinking;

  for (const Word& w : known) {
    if (w.size() <= b.report_len) res.words.insert(w);
  }
  return res;
}

}  // namespace splice
