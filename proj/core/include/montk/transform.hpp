#pragma once

#include "montk/automata.hpp"
#include "montk/term.hpp"
#include "montk/trace.hpp"

namespace montk {

struct TransformLimits {
  PowersetLimits powerset;
  long long max_monitor_symbols = 50'000'000;
};

// Replace & and | by nondeterministic choice: the result is parallel-free
// and has the same acceptance and rejection languages (for reactive
// monitors, on which the automaton route is faithful).
Monitor parallel_to_regular(const Monitor& monitor, const TransformLimits& limits = {});

// Parallel-free, consistent monitor to a deterministic one (every sum a
// choice between distinct action prefixes) with the same verdict languages.
Monitor determinize_regular(const Monitor& monitor, const TransformLimits& limits = {});

// Full pipeline: consistent (possibly parallel) monitor to a deterministic
// parallel-free monitor with the same verdict languages.
Monitor parallel_to_deterministic(const Monitor& monitor, const TransformLimits& limits = {});

enum class EquivalenceMode {
  Verdict,  // equal acceptance and rejection languages of finite traces
  Omega     // equal verdicts over infinite traces u.v^omega
};

struct EquivalenceResult {
  bool equivalent = true;
  Polarity mismatch = Polarity::Accept;  // which verdict language differs
  int side = -1;                         // 0: first monitor only, 1: second
  Trace counterexample_trace;            // Verdict mode witness
  Lasso counterexample_lasso;            // Omega mode witness
};

EquivalenceResult check_equivalence(const Monitor& a, const Monitor& b,
                                    EquivalenceMode mode,
                                    const TransformLimits& limits = {});

}  // namespace montk
