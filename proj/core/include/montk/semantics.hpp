#pragma once

#include <string>
#include <vector>

#include "montk/term.hpp"
#include "montk/trace.hpp"

namespace montk {

// One strong reduction step of a term.  The label is either an action of
// the monitor's alphabet or "tau" for an internal step.
struct Step {
  std::string label;
  TermPtr target;
};

// All strong one-step derivatives of a term of the given monitor, in a
// deterministic order (tau steps first, then actions in alphabet order).
std::vector<Step> derivatives(const Monitor& monitor, const TermPtr& term);

// Exploration limits for weak (tau-saturated) execution.  The tau budget
// caps how many distinct terms one saturation may visit; the frontier
// budget caps how many terms are tracked simultaneously along a trace.
struct Budget {
  long long max_tau_steps_per_action = 10000;
  long long max_frontier_terms = 100000;
};

enum class Outcome { Accepted, Rejected, Inconclusive, BudgetExceeded };

struct RunResult {
  Outcome outcome = Outcome::Inconclusive;
  // Length of the shortest trace prefix after which the verdict was
  // reachable; -1 when no verdict was reached.
  int witness_prefix_length = -1;
  std::string detail;  // which budget tripped, for BudgetExceeded
};

// Execute the monitor over the trace with weak moves: saturate by tau
// steps, look for reachable verdicts, then consume the next action on the
// whole frontier.  Acceptance and rejection reachable after the same
// prefix report Accepted.
RunResult run_finite_trace(const Monitor& monitor, const Trace& trace,
                           const Budget& budget = {});

enum class Reactivity { Reactive, NotReactive, UnknownAtBound };

struct ReactivityResult {
  Reactivity status = Reactivity::UnknownAtBound;
  // Witness for NotReactive: a reachable term and an action it cannot
  // weakly consume.
  TermPtr stuck_term;
  std::string stuck_action;
  // True when the syntactic sufficient condition already guarantees
  // reactivity (every reachable sum is guarded by a verdict summand or
  // covers the whole alphabet).
  bool syntactic = false;
};

// Explore all weakly reachable terms and check that each can consume every
// action.  Returns UnknownAtBound when a budget trips first.
ReactivityResult check_reactive(const Monitor& monitor, const Budget& budget = {});

struct ConsistencyResult {
  bool consistent = true;
  Trace witness;  // a trace both accepted and rejected, when inconsistent
};

// Decides whether some trace is both accepted and rejected, via the
// automaton construction (with a syntactic fast path when one of the two
// verdicts does not occur in the term).
ConsistencyResult check_consistent(const Monitor& monitor);

}  // namespace montk
