#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "montk/automata.hpp"
#include "montk/error.hpp"
#include "montk/logic.hpp"

namespace montk {

namespace {

using PosSet = std::vector<char>;

struct LassoEval {
  std::vector<std::string> word;  // u then v; successor of the last wraps to |u|
  std::size_t loop_start = 0;
  std::map<std::string, PosSet> env;

  std::size_t succ(std::size_t i) const {
    return i + 1 < word.size() ? i + 1 : loop_start;
  }

  PosSet eval(const FormulaPtr& f) {
    std::size_t n = word.size();
    PosSet out(n, 0);
    switch (f->kind) {
      case FormulaKind::TT:
        out.assign(n, 1);
        break;
      case FormulaKind::FF:
        break;
      case FormulaKind::And: {
        PosSet l = eval(f->left);
        PosSet r = eval(f->right);
        for (std::size_t i = 0; i < n; ++i) out[i] = l[i] && r[i];
        break;
      }
      case FormulaKind::Or: {
        PosSet l = eval(f->left);
        PosSet r = eval(f->right);
        for (std::size_t i = 0; i < n; ++i) out[i] = l[i] || r[i];
        break;
      }
      case FormulaKind::Box: {
        PosSet c = eval(f->left);
        for (std::size_t i = 0; i < n; ++i)
          out[i] = word[i] != f->label || c[succ(i)];
        break;
      }
      case FormulaKind::Diamond: {
        PosSet c = eval(f->left);
        for (std::size_t i = 0; i < n; ++i)
          out[i] = word[i] == f->label && c[succ(i)];
        break;
      }
      case FormulaKind::Max:
      case FormulaKind::Min: {
        PosSet current(n, f->kind == FormulaKind::Max ? 1 : 0);
        std::optional<PosSet> saved;
        if (auto it = env.find(f->label); it != env.end()) saved = it->second;
        for (;;) {
          env[f->label] = current;
          PosSet next = eval(f->left);
          if (next == current) break;
          current = std::move(next);
        }
        if (saved)
          env[f->label] = *saved;
        else
          env.erase(f->label);
        out = std::move(current);
        break;
      }
      case FormulaKind::Var: {
        auto it = env.find(f->label);
        if (it == env.end())
          throw PreconditionError("formula has a free variable: " + f->label);
        out = it->second;
        break;
      }
    }
    return out;
  }
};

struct Synth {
  const LogicFormula& formula;
  Polarity direction;
  bool parallel;

  TermPtr sum_with_end(std::vector<TermPtr> summands) const {
    TermPtr out = nullptr;
    for (TermPtr& s : summands)
      out = out ? Term::choice(std::move(out), std::move(s)) : std::move(s);
    return out ? Term::choice(std::move(out), Term::end()) : Term::end();
  }

  // The verdict pronounced on actions that decide the modality at once:
  // a wrong action under <a> violates it, any action under [a] satisfies
  // the dual reading.
  TermPtr decided() const {
    return direction == Polarity::Reject ? Term::no() : Term::yes();
  }

  TermPtr walk(const FormulaPtr& f) const {
    bool reject = direction == Polarity::Reject;
    switch (f->kind) {
      case FormulaKind::TT:
        return reject ? Term::end() : Term::yes();
      case FormulaKind::FF:
        return reject ? Term::no() : Term::end();
      case FormulaKind::And: {
        TermPtr l = walk(f->left);
        TermPtr r = walk(f->right);
        if (parallel) return Term::par_and(std::move(l), std::move(r));
        return Term::choice(std::move(l), std::move(r));  // rejections add up
      }
      case FormulaKind::Or: {
        TermPtr l = walk(f->left);
        TermPtr r = walk(f->right);
        if (parallel) return Term::par_or(std::move(l), std::move(r));
        return Term::choice(std::move(l), std::move(r));  // acceptances add up
      }
      case FormulaKind::Box:
      case FormulaKind::Diamond: {
        // one-step modality: the labelled branch continues, every other
        // action either decides the formula or leaves it undecided
        bool decided_elsewhere = reject == (f->kind == FormulaKind::Diamond);
        std::vector<TermPtr> summands;
        for (const std::string& b : formula.alphabet->actions())
          if (b != f->label && decided_elsewhere)
            summands.push_back(Term::prefix(b, decided()));
        summands.push_back(Term::prefix(f->label, walk(f->left)));
        return sum_with_end(std::move(summands));
      }
      case FormulaKind::Max:
      case FormulaKind::Min:
        return Term::rec(f->label, walk(f->left));
      case FormulaKind::Var:
        return Term::var(f->label);
    }
    return Term::end();  // unreachable
  }
};

struct ToFormula {
  Polarity polarity;
  std::unordered_map<const Term*, FormulaPtr> memo;

  FormulaPtr walk(const TermPtr& t) {
    if (auto it = memo.find(t.get()); it != memo.end()) return it->second;
    bool reject = polarity == Polarity::Reject;
    FormulaPtr out;
    switch (t->kind) {
      case TermKind::Verdict:
        // end never reaches the verdict in question, so it reads as the
        // neutral element of the polarity
        if (t->verdict == Verdict::Yes)
          out = Formula::tt();
        else if (t->verdict == Verdict::No)
          out = Formula::ff();
        else
          out = reject ? Formula::tt() : Formula::ff();
        break;
      case TermKind::Prefix: {
        FormulaPtr child = walk(t->left);
        out = reject ? Formula::box(t->label, std::move(child))
                     : Formula::diamond(t->label, std::move(child));
        break;
      }
      case TermKind::Choice: {
        FormulaPtr l = walk(t->left);
        FormulaPtr r = walk(t->right);
        out = reject ? Formula::conj(std::move(l), std::move(r))
                     : Formula::disj(std::move(l), std::move(r));
        break;
      }
      case TermKind::ParAnd:
        out = Formula::conj(walk(t->left), walk(t->right));
        break;
      case TermKind::ParOr:
        out = Formula::disj(walk(t->left), walk(t->right));
        break;
      case TermKind::Rec: {
        FormulaPtr body = walk(t->left);
        out = reject ? Formula::max(t->label, std::move(body))
                     : Formula::min(t->label, std::move(body));
        break;
      }
      case TermKind::Var:
        out = Formula::var(t->label);
        break;
    }
    memo.emplace(t.get(), out);
    return out;
  }
};

bool uses_var(const FormulaPtr& f, const std::string& name) {
  if (f->kind == FormulaKind::Var) return f->label == name;
  if ((f->kind == FormulaKind::Max || f->kind == FormulaKind::Min) &&
      f->label == name)
    return false;  // shadowed
  bool used = false;
  if (f->left) used = uses_var(f->left, name);
  if (!used && f->right) used = uses_var(f->right, name);
  return used;
}

FormulaPtr simplify(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::TT:
    case FormulaKind::FF:
    case FormulaKind::Var:
      return f;
    case FormulaKind::And: {
      FormulaPtr l = simplify(f->left);
      FormulaPtr r = simplify(f->right);
      if (l->kind == FormulaKind::FF || r->kind == FormulaKind::FF)
        return Formula::ff();
      if (l->kind == FormulaKind::TT) return r;
      if (r->kind == FormulaKind::TT) return l;
      return Formula::conj(std::move(l), std::move(r));
    }
    case FormulaKind::Or: {
      FormulaPtr l = simplify(f->left);
      FormulaPtr r = simplify(f->right);
      if (l->kind == FormulaKind::TT || r->kind == FormulaKind::TT)
        return Formula::tt();
      if (l->kind == FormulaKind::FF) return r;
      if (r->kind == FormulaKind::FF) return l;
      return Formula::disj(std::move(l), std::move(r));
    }
    case FormulaKind::Box: {
      FormulaPtr c = simplify(f->left);
      if (c->kind == FormulaKind::TT) return Formula::tt();
      return Formula::box(f->label, std::move(c));
    }
    case FormulaKind::Diamond: {
      FormulaPtr c = simplify(f->left);
      if (c->kind == FormulaKind::FF) return Formula::ff();
      return Formula::diamond(f->label, std::move(c));
    }
    case FormulaKind::Max:
    case FormulaKind::Min: {
      FormulaPtr body = simplify(f->left);
      if (!uses_var(body, f->label)) return body;
      return f->kind == FormulaKind::Max ? Formula::max(f->label, std::move(body))
                                         : Formula::min(f->label, std::move(body));
    }
  }
  return f;  // unreachable
}

}  // namespace

bool eval_formula_lasso(const LogicFormula& formula, const Lasso& lasso) {
  if (lasso.v.empty())
    throw PreconditionError("lasso evaluation needs a non-empty loop");
  require_over_alphabet(lasso.u, formula.alphabet);
  require_over_alphabet(lasso.v, formula.alphabet);
  LassoEval ev{{}, lasso.u.size(), {}};
  ev.word = lasso.u;
  ev.word.insert(ev.word.end(), lasso.v.begin(), lasso.v.end());
  return ev.eval(formula.root)[0] != 0;
}

Monitor synthesize(const LogicFormula& formula, std::optional<Polarity> direction,
                   SynthTarget target) {
  const Fragments& frag = formula.fragments;
  Polarity dir;
  if (direction) {
    dir = *direction;
  } else if (frag.safety) {
    // the syntactic fragments take precedence: a fixpoint-free formula is
    // both max-only and min-only, but its connectives still pick a side
    dir = Polarity::Reject;
  } else if (frag.cosafety) {
    dir = Polarity::Accept;
  } else if (frag.max_only) {
    dir = Polarity::Reject;
  } else if (frag.min_only) {
    dir = Polarity::Accept;
  } else {
    throw PreconditionError(
        "formula mixes fixpoint kinds; pick a direction explicitly");
  }
  if (dir == Polarity::Reject && !frag.max_only)
    throw PreconditionError(
        "a rejection monitor needs a formula without least fixpoints");
  if (dir == Polarity::Accept && !frag.min_only)
    throw PreconditionError(
        "an acceptance monitor needs a formula without greatest fixpoints");
  bool one_sided =
      dir == Polarity::Reject ? frag.safety : frag.cosafety;
  bool parallel;
  switch (target) {
    case SynthTarget::Auto:
      parallel = !one_sided;
      break;
    case SynthTarget::Regular:
      if (!one_sided)
        throw PreconditionError(
            "the choice-only build needs the one-sided fragment");
      parallel = false;
      break;
    case SynthTarget::Parallel:
      parallel = true;
      break;
    default:
      parallel = true;
      break;
  }
  Synth synth{formula, dir, parallel};
  return normalize(synth.walk(formula.root), formula.alphabet);
}

LogicFormula monitor_to_formula(const Monitor& monitor, Polarity polarity) {
  ValidationReport report = validate(monitor);
  if (!report.closed)
    throw PreconditionError("formula extraction needs a closed monitor");
  ToFormula reader{polarity, {}};
  return make_formula(reader.walk(monitor.root), monitor.alphabet);
}

LogicFormula translate_max_to_safety(const LogicFormula& formula) {
  if (!formula.fragments.max_only)
    throw PreconditionError(
        "the safety translation needs a formula without least fixpoints");
  Monitor m = synthesize(formula, Polarity::Reject, SynthTarget::Parallel);
  Nfa rejection =
      extension_close(afa_to_nfa(monitor_to_afa(m, Polarity::Reject)));
  Monitor regular = nfa_to_monitor(rejection, Verdict::No, "x");
  LogicFormula raw = monitor_to_formula(regular, Polarity::Reject);
  return make_formula(simplify(raw.root), formula.alphabet);
}

}  // namespace montk
