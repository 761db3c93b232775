#pragma once

#include "splice/grammar.hpp"
#include "splice/system.hpp"

namespace splice {

// True iff every rule handle (flat) or rule component (circular Paun) is a
// letter or the empty word.
bool check_alphabetic(const SplicingSystem& s);

// Phase 1: grammar for the concatenation-only closure K of the initial set.
// Nonterminals K{x,y} derive the K-words of length >= 2 that start with x
// and end with y; single-letter initial words hang off the start symbol.
GenCfg concat_grammar(const SplicingSystem& s);

// Phase 2: full grammar for the language of an alphabetic flat system.
// Every adjacency (x,y) of a K-derivation carries an insertion slot I{x,y};
// a slot inserts whole language words W{f,l} (or single initial letters)
// whose boundary letters fit the rule handles.
GenCfg insert_grammar(const GenCfg& k, const SplicingSystem& s);

// Full compilation: flat alphabetic systems directly; (1,3)-CSSH circular
// systems through the flat bridge (A, Lin(I), {(a,1,1,b)}), generating the
// full linearization of the circular language; (2,4)-CSSH by reversal.
// Anything else is rejected.
GenCfg compile_gen(const SplicingSystem& s);
Cfg compile(const SplicingSystem& s);  // = lower(compile_gen(s))

// The flat bridge system of a (1,3)-CSSH system.
SplicingSystem flat_bridge(const SplicingSystem& cssh13);

}  // namespace splice
