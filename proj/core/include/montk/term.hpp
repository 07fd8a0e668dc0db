#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "montk/alphabet.hpp"

namespace montk {

enum class TermKind { Verdict, Prefix, Choice, Rec, Var, ParAnd, ParOr };
enum class Verdict { Yes, No, End };

// Which verdict language a construction talks about: the traces a monitor
// accepts (reaches yes) or rejects (reaches no).
enum class Polarity { Accept, Reject };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Immutable monitor AST node. Nodes may be shared between terms (the structures
// produced by transformations are DAGs whose printed form is the unfolded tree);
// size_symbols and hash are computed once at construction and are DAG-safe.
struct Term {
  TermKind kind;
  Verdict verdict{};        // Verdict nodes
  std::string label;        // Prefix: action name; Rec/Var: variable name
  TermPtr left;             // Prefix/Rec: only child; Choice/ParAnd/ParOr: left
  TermPtr right;            // Choice/ParAnd/ParOr: right
  std::uint64_t hash = 0;   // structural hash
  long long size_symbols = 0;  // symbol-count size of the unfolded tree

  static TermPtr yes();
  static TermPtr no();
  static TermPtr end();
  static TermPtr verdict_of(Verdict v);
  static TermPtr prefix(std::string action, TermPtr child);
  static TermPtr choice(TermPtr lhs, TermPtr rhs);
  static TermPtr rec(std::string var, TermPtr body);
  static TermPtr var(std::string name);
  static TermPtr par_and(TermPtr lhs, TermPtr rhs);
  static TermPtr par_or(TermPtr lhs, TermPtr rhs);

  bool is_verdict(Verdict v) const { return kind == TermKind::Verdict && verdict == v; }
};

bool structural_equal(const TermPtr& a, const TermPtr& b);

struct TermPtrHash {
  std::size_t operator()(const TermPtr& t) const { return t ? t->hash : 0; }
};
struct TermPtrEq {
  bool operator()(const TermPtr& a, const TermPtr& b) const {
    return structural_equal(a, b);
  }
};

// A monitor: a term over one declared alphabet, with the binder map var -> its
// rec node. After normalization every variable name is bound by exactly one rec
// node (shared subtrees count once), so the map is well defined.
struct Monitor {
  TermPtr root;
  AlphabetPtr alphabet;
  std::map<std::string, TermPtr> binders;
};

struct ValidationReport {
  bool closed = true;
  std::vector<std::string> free_vars;
  bool regular = true;        // no parallel operator anywhere
  bool deterministic = true;  // regular and every multi-summand sum is an action
                              // sum with pairwise distinct actions
  bool alpha_unique = true;   // each variable name bound by at most one rec node
};

// Renames binders to fresh x0, x1, ... in a deterministic traversal order,
// checks action names against the alphabet, and rebuilds the binder map.
// Free variables keep their names. Throws AlphabetError on unknown actions.
Monitor normalize(TermPtr root, AlphabetPtr alphabet);

// Wraps an already well-named term (each binder name on one rec node only, as
// produced by the constructions in this library) without renaming. Throws
// PreconditionError on duplicate binder names, AlphabetError on bad actions.
Monitor make_monitor(TermPtr root, AlphabetPtr alphabet);

// Reports closedness, regularity, determinism, and binder uniqueness.
// Never throws; findings are carried in the report.
ValidationReport validate(const Monitor& m);

// Symbol-count size: verdicts and variables count 1, a.m counts 2 + size(m),
// the three binary operators count sizes plus 1, rec x.m counts 3 + size(m).
long long term_size(const TermPtr& t);
long long term_size(const Monitor& m);

// Appends an `end` summand to every maximal sum that lacks one and turns each
// bare action prefix into prefix + end. Preserves the accepted and rejected
// languages exactly and makes guarded terms reactive.
Monitor pad(const Monitor& m);
TermPtr pad_term(const TermPtr& t);

// Syntactic sufficient condition for reactivity: every maximal sum either
// contains a verdict summand or covers all actions of the alphabet with its
// prefix summands (checked recursively; variables defer to their binder body).
bool syntactically_reactive(const Monitor& m);

// Concrete syntax. & and | bind loosest, then +, then prefix; rec bodies and
// parenthesized groups are explicit. print(parse(print(t))) == print(t).
std::string print_term(const TermPtr& t);
std::string print_monitor(const Monitor& m);

// Collects distinct subterms in deterministic (first-visit, DAG-deduplicated)
// order. Shared nodes appear once.
std::vector<TermPtr> subterms(const TermPtr& root);

}  // namespace montk
