#pragma once

#include <optional>

#include "montk/formula.hpp"
#include "montk/term.hpp"
#include "montk/trace.hpp"

namespace montk {

// True iff the infinite trace u.v^omega satisfies the formula.  Fixpoints
// are evaluated by Knaster-Tarski iteration over the |u|+|v| distinct
// suffix positions of the lasso.
bool eval_formula_lasso(const LogicFormula& formula, const Lasso& lasso);

enum class SynthTarget {
  Auto,      // regular when the fragment admits it, parallel otherwise
  Regular,   // conjunction/disjunction via +; only for one-sided fragments
  Parallel,  // conjunction via &, disjunction via |
};

// Build a monitor whose rejection (Polarity::Reject) or acceptance
// (Polarity::Accept) language witnesses the formula's violations resp.
// satisfactions.  When no direction is given it is chosen from the
// fragment: safety/max-only formulas get a rejection monitor, others an
// acceptance monitor.
Monitor synthesize(const LogicFormula& formula,
                   std::optional<Polarity> direction = std::nullopt,
                   SynthTarget target = SynthTarget::Auto);

// The reverse reading: the formula whose violations (Reject) or
// satisfactions (Accept) the given monitor's verdict language describes.
LogicFormula monitor_to_formula(const Monitor& monitor, Polarity polarity);

// Rewrite a formula from the max/conjunction-free-of-min fragment into an
// equivalent purely-safety formula (no disjunction, no diamond), going
// through a rejection monitor and its determinization.
LogicFormula translate_max_to_safety(const LogicFormula& formula);

}  // namespace montk
