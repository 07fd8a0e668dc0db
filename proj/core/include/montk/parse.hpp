#pragma once

#include <string>

#include "montk/formula.hpp"
#include "montk/term.hpp"

namespace montk {

// Monitor grammar (actions and variables share the lexical class [A-Za-z0-9_#$]+;
// a name followed by '.' is an action prefix, otherwise it is a verdict keyword
// or a variable):
//   par  := sum (('&' | '|') sum)*          left-associative
//   sum  := item ('+' item)*
//   item := 'yes' | 'no' | 'end' | name | name '.' item
//         | 'rec' name '.' item | '(' par ')'
// The result is normalized (binders renamed to x0, x1, ...; binder map filled).
// Free variables are allowed here and reported by validate().
Monitor parse_monitor(const std::string& text, const AlphabetPtr& alphabet);

// Formula grammar:
//   or    := and ('||' and)*
//   and   := unary ('&&' unary)*
//   unary := 'tt' | 'ff' | '[' name ']' unary | '<' name '>' unary
//          | 'max' name '.' unary | 'min' name '.' unary | name | '(' or ')'
// Formulas must be closed; free logical variables are an error.
LogicFormula parse_formula(const std::string& text, const AlphabetPtr& alphabet);

}  // namespace montk
