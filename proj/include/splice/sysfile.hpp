#pragma once

#include <string>

#include "splice/system.hpp"

namespace splice {

// System file format, one keyword per line, '#' starts a comment:
//
//   kind: linear | circular | circular-head | circular-pixton | flat
//   alphabet: a b c
//   initial: ab ^ba _
//   rule: u1 # u2 $ u3 # u4        (linear, circular)
//   rule: alpha | beta $ gamma | delta   (flat)
//   rule: p # x # q                (circular-head triple)
//   rule: alpha # alpha' # beta # beta'  (circular-pixton pair)
//   option: self-splicing | one-splicing
//
// '_' is the empty word; '^w' is the circular word of w. The parsed system
// comes back normalized (symmetric closure, inert parts in dropped_*).
SplicingSystem parse_system_text(const std::string& text);
SplicingSystem parse_system(const std::string& path);

// Canonical file text of a normalized system; parsing it again gives back
// an equal system.
std::string print_system(const SplicingSystem& s);

// Word tokens for file and report output.
std::string word_token(const Word& w);
std::string circ_token(const CircWord& c);

}  // namespace splice
