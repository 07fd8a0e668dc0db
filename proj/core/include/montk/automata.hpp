#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "montk/term.hpp"
#include "montk/trace.hpp"

namespace montk {

// Positive boolean formula over state ids in canonical disjunctive normal
// form: a minimal antichain of sorted cubes.  No cube is a superset of
// another; {} is false and {{}} is true.
struct Dnf {
  std::vector<std::vector<int>> cubes;

  static Dnf f() { return {}; }
  static Dnf t() { return {{{}}}; }
  static Dnf atom(int id) { return {{{id}}}; }
  bool is_false() const { return cubes.empty(); }
  bool is_true() const { return cubes.size() == 1 && cubes[0].empty(); }
};

Dnf dnf_or(const Dnf& a, const Dnf& b);
Dnf dnf_and(const Dnf& a, const Dnf& b);
bool dnf_equal(const Dnf& a, const Dnf& b);
std::string format_dnf(const Dnf& d, const std::vector<std::string>& names);

// Alternating finite automaton with transitions into positive boolean
// combinations of states.  A trace is accepted when the run tree rooted at
// the initial formula can end with every leaf in an accepting state.
struct Afa {
  AlphabetPtr alphabet;
  int num_states = 0;
  std::vector<std::string> state_names;
  Dnf initial;
  std::vector<std::vector<Dnf>> delta;  // [state][action index]
  std::vector<char> accepting;
  Polarity polarity = Polarity::Accept;
};

// Automaton for the monitor's acceptance (Accept) or rejection (Reject)
// language.  States are the action-prefixed subterms plus bookkeeping
// states; recursion is resolved by a least fixpoint, so unguarded cycles
// denote no obligation.  Exact for parallel-free monitors; for monitors
// with & or | it captures the verdict language of reactive terms.
Afa monitor_to_afa(const Monitor& monitor, Polarity polarity);

bool afa_accepts(const Afa& afa, const Trace& trace);

// Amortized membership: preprocesses the transition formulas into a shared
// graph once, then steps one canonical obligation formula per trace.  Agrees
// with afa_accepts everywhere but stays fast on automata whose obligation
// frontiers are too wide to enumerate cube by cube.
class AfaEvaluator {
 public:
  explicit AfaEvaluator(const Afa& afa,
                        long long max_formula_nodes = 20'000'000);
  ~AfaEvaluator();
  AfaEvaluator(AfaEvaluator&&) noexcept;
  AfaEvaluator& operator=(AfaEvaluator&&) noexcept;

  bool accepts(const Trace& trace) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct Nfa {
  AlphabetPtr alphabet;
  int num_states = 0;
  std::vector<int> initial;  // sorted
  std::vector<std::vector<std::vector<int>>> delta;  // [state][action] -> sorted
  std::vector<char> accepting;
  std::vector<std::string> state_names;
  bool extension_closed = false;
};

struct PowersetLimits {
  long long max_states = 1'000'000;
  long long max_combinations = 5'000'000;   // cube choices per expansion
  long long max_formula_nodes = 20'000'000; // shared transition-formula graph
};

// De-universalize: NFA states are obligation sets of AFA states (one cube
// chosen per member), accepting when all members are accepting.
Nfa afa_to_nfa(const Afa& afa, const PowersetLimits& limits = {});

struct Dfa {
  AlphabetPtr alphabet;
  int num_states = 0;
  int initial = 0;
  std::vector<std::vector<int>> delta;  // [state][action] -> state, total
  std::vector<char> accepting;
  std::vector<std::string> state_names;
  bool extension_closed = false;
};

Dfa nfa_to_dfa(const Nfa& nfa, const PowersetLimits& limits = {});

// Determinize in one pass: DFA states are the canonical obligation formulas
// reached from the initial one, stepped exactly as afa_accepts steps them.
// Accepts the same language as nfa_to_dfa(afa_to_nfa(afa)) but collapses
// presentations of the same formula, so it stays feasible on automata whose
// obligation-set NFA is too large to determinize.
Dfa afa_to_dfa(const Afa& afa, const PowersetLimits& limits = {});

// Verdict-language DFA built straight from the monitor.  Same language as
// afa_to_dfa(monitor_to_afa(monitor, polarity)), but the transition
// formulas stay in shared graph form throughout, so it also handles
// monitors whose expanded formulas are too large to write down.
Dfa monitor_to_dfa(const Monitor& monitor, Polarity polarity,
                   const PowersetLimits& limits = {});

bool nfa_accepts(const Nfa& nfa, const Trace& trace);
bool dfa_accepts(const Dfa& dfa, const Trace& trace);

// Close the language under extensions: accepting states absorb.
Nfa extension_close(const Nfa& nfa);
Dfa extension_close(const Dfa& dfa);

struct LanguageCompare {
  bool equal = true;
  Trace counterexample;  // shortest trace in exactly one language
  int side = -1;         // 0: first automaton only, 1: second only
};

LanguageCompare dfa_language_equal(const Dfa& a, const Dfa& b);

// Whether some finite prefix of u.v^omega is in the language (the verdict
// an extension-closed language pronounces on the lasso).
bool lasso_member(const Dfa& dfa, const Lasso& lasso);

// A shortest suffix z such that exactly one of u1.z, u2.z is accepted, or
// nullopt when the two prefixes lead to equal residual languages.
std::optional<Trace> distinguishing_suffix(const Dfa& dfa, const Trace& u1,
                                           const Trace& u2);

// Rebuild a parallel-free monitor that reaches the given verdict exactly on
// the automaton's language.  Requires an extension-closed automaton; sets
// that cannot reach acceptance are dropped, accepting sets become the
// verdict immediately.  Binder names are binder_prefix + counter, so two
// results can be combined without clashes.
Monitor nfa_to_monitor(const Nfa& nfa, Verdict verdict,
                       const std::string& binder_prefix = "x");
Monitor dfa_to_monitor(const Dfa& dfa, Verdict verdict,
                       const std::string& binder_prefix = "x");

}  // namespace montk
