#pragma once

#include <string>

#include "montk/automata.hpp"
#include "montk/term.hpp"

namespace montk {

// Graphviz renderings.  Automata draw one node per state (double circle
// for accepting); AFA transitions draw one edge per cube, joined by a dot
// when the cube has several conjuncts.  Monitors draw their term DAG.
std::string dot_afa(const Afa& afa);
std::string dot_nfa(const Nfa& nfa);
std::string dot_dfa(const Dfa& dfa);
std::string dot_monitor(const Monitor& monitor);

}  // namespace montk
