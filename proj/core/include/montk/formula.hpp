#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "montk/alphabet.hpp"

namespace montk {

enum class FormulaKind { TT, FF, And, Or, Box, Diamond, Max, Min, Var };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable formula AST node (linear-time logic with greatest/least fixpoints).
struct Formula {
  FormulaKind kind;
  std::string label;        // Box/Diamond: action; Max/Min/Var: variable name
  FormulaPtr left;          // Box/Diamond/Max/Min: only child; And/Or: left
  FormulaPtr right;         // And/Or: right
  std::uint64_t hash = 0;
  long long size_symbols = 0;

  static FormulaPtr tt();
  static FormulaPtr ff();
  static FormulaPtr conj(FormulaPtr lhs, FormulaPtr rhs);
  static FormulaPtr disj(FormulaPtr lhs, FormulaPtr rhs);
  static FormulaPtr box(std::string action, FormulaPtr child);
  static FormulaPtr diamond(std::string action, FormulaPtr child);
  static FormulaPtr max(std::string var, FormulaPtr body);
  static FormulaPtr min(std::string var, FormulaPtr body);
  static FormulaPtr var(std::string name);
};

bool structural_equal(const FormulaPtr& a, const FormulaPtr& b);

// Fragment membership, computed from the connectives that occur:
//   safety      tt ff && [a] max X       (no ||, no <a>, no min)
//   cosafety    tt ff || <a> min X       (no &&, no [a], no max)
//   max_only    no least fixpoint anywhere
//   min_only    no greatest fixpoint anywhere
struct Fragments {
  bool safety = true;
  bool cosafety = true;
  bool max_only = true;
  bool min_only = true;
};

// A closed-checked formula over one declared alphabet.
struct LogicFormula {
  FormulaPtr root;
  AlphabetPtr alphabet;
  Fragments fragments;
};

Fragments classify(const FormulaPtr& root);

// Checks closedness and actions, computes fragments. Throws AlphabetError on
// unknown actions and PreconditionError on free logical variables.
LogicFormula make_formula(FormulaPtr root, AlphabetPtr alphabet);

// Same size discipline as terms: tt/ff/X count 1, [a]p and <a>p count 2 + size,
// the binary connectives count sizes plus 1, max X.p and min X.p count 3 + size.
long long formula_size(const FormulaPtr& f);

// Concrete syntax: tt ff && || [a] <a> max X. min X.; && binds tighter than ||.
std::string print_formula(const FormulaPtr& f);
std::string print_formula(const LogicFormula& f);

}  // namespace montk
