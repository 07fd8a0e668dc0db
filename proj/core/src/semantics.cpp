#include "montk/semantics.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "montk/error.hpp"

namespace montk {

namespace {

constexpr const char* kTau = "tau";

using StepList = std::vector<Step>;
using TermSet = std::unordered_set<TermPtr, TermPtrHash, TermPtrEq>;

bool has_verdict(const TermPtr& t, Verdict v) {
  return t->kind == TermKind::Verdict && t->verdict == v;
}

void push_step(StepList& out, std::string label, TermPtr target) {
  for (const Step& s : out)
    if (s.label == label && structural_equal(s.target, target)) return;
  out.push_back({std::move(label), std::move(target)});
}

TermPtr rebuild(TermKind kind, TermPtr l, TermPtr r) {
  return kind == TermKind::ParAnd ? Term::par_and(std::move(l), std::move(r))
                                  : Term::par_or(std::move(l), std::move(r));
}

StepList strong_steps(const Monitor& m, const TermPtr& t) {
  StepList out;
  const auto& acts = m.alphabet->actions();
  switch (t->kind) {
    case TermKind::Verdict:
      // Verdicts persist over every visible action; they take no tau step.
      for (const std::string& a : acts) push_step(out, a, t);
      break;
    case TermKind::Prefix:
      push_step(out, t->label, t->left);
      break;
    case TermKind::Choice:
      // Selection lifts any step of a summand, tau included, and commits.
      for (const Step& s : strong_steps(m, t->left))
        push_step(out, s.label, s.target);
      for (const Step& s : strong_steps(m, t->right))
        push_step(out, s.label, s.target);
      break;
    case TermKind::Rec:
      push_step(out, kTau, t->left);
      break;
    case TermKind::Var: {
      auto it = m.binders.find(t->label);
      if (it != m.binders.end()) push_step(out, kTau, it->second->left);
      break;  // a free variable is stuck
    }
    case TermKind::ParAnd:
    case TermKind::ParOr: {
      const bool conj = t->kind == TermKind::ParAnd;
      const TermPtr& L = t->left;
      const TermPtr& R = t->right;
      if (has_verdict(L, Verdict::End) && has_verdict(R, Verdict::End))
        push_step(out, kTau, Term::end());
      if (conj) {
        if (has_verdict(L, Verdict::Yes)) push_step(out, kTau, R);
        if (has_verdict(R, Verdict::Yes)) push_step(out, kTau, L);
        if (has_verdict(L, Verdict::No) || has_verdict(R, Verdict::No))
          push_step(out, kTau, Term::no());
      } else {
        if (has_verdict(L, Verdict::No)) push_step(out, kTau, R);
        if (has_verdict(R, Verdict::No)) push_step(out, kTau, L);
        if (has_verdict(L, Verdict::Yes) || has_verdict(R, Verdict::Yes))
          push_step(out, kTau, Term::yes());
      }
      StepList ls = strong_steps(m, L);
      StepList rs = strong_steps(m, R);
      for (const Step& s : ls)
        if (s.label == kTau) push_step(out, kTau, rebuild(t->kind, s.target, R));
      for (const Step& s : rs)
        if (s.label == kTau) push_step(out, kTau, rebuild(t->kind, L, s.target));
      // A visible action needs both sides to take it.
      for (const std::string& a : acts) {
        for (const Step& sl : ls) {
          if (sl.label != a) continue;
          for (const Step& sr : rs)
            if (sr.label == a)
              push_step(out, a, rebuild(t->kind, sl.target, sr.target));
        }
      }
      break;
    }
  }
  return out;
}

// Shared step cache plus budgeted tau saturation.
struct Runner {
  const Monitor& m;
  const Budget& budget;
  std::unordered_map<TermPtr, StepList, TermPtrHash, TermPtrEq> cache;

  const StepList& steps(const TermPtr& t) {
    auto it = cache.find(t);
    if (it != cache.end()) return it->second;
    return cache.emplace(t, strong_steps(m, t)).first->second;
  }

  // Extends `terms` to its tau closure.  Returns false when the visited-term
  // budget trips.
  bool saturate(std::vector<TermPtr>& terms, TermSet& seen) {
    std::deque<TermPtr> work(terms.begin(), terms.end());
    while (!work.empty()) {
      TermPtr t = work.front();
      work.pop_front();
      for (const Step& s : steps(t)) {
        if (s.label != kTau) continue;
        if (!seen.insert(s.target).second) continue;
        if (static_cast<long long>(seen.size()) >
            budget.max_tau_steps_per_action)
          return false;
        terms.push_back(s.target);
        work.push_back(s.target);
      }
    }
    return true;
  }
};

}  // namespace

std::vector<Step> derivatives(const Monitor& monitor, const TermPtr& term) {
  StepList out = strong_steps(monitor, term);
  std::stable_sort(out.begin(), out.end(), [&](const Step& a, const Step& b) {
    int ka = a.label == kTau ? -1 : monitor.alphabet->index_of(a.label);
    int kb = b.label == kTau ? -1 : monitor.alphabet->index_of(b.label);
    return ka < kb;
  });
  return out;
}

RunResult run_finite_trace(const Monitor& monitor, const Trace& trace,
                           const Budget& budget) {
  require_over_alphabet(trace, monitor.alphabet);
  Runner runner{monitor, budget, {}};
  std::vector<TermPtr> frontier = {monitor.root};
  for (std::size_t i = 0;; ++i) {
    TermSet seen(frontier.begin(), frontier.end());
    if (static_cast<long long>(seen.size()) > budget.max_tau_steps_per_action)
      return {Outcome::BudgetExceeded, -1,
              "tau budget exceeded after " + std::to_string(i) + " actions"};
    if (!runner.saturate(frontier, seen))
      return {Outcome::BudgetExceeded, -1,
              "tau budget exceeded after " + std::to_string(i) + " actions"};
    bool any_yes = false, any_no = false;
    for (const TermPtr& t : frontier) {
      any_yes = any_yes || has_verdict(t, Verdict::Yes);
      any_no = any_no || has_verdict(t, Verdict::No);
    }
    if (any_yes) return {Outcome::Accepted, static_cast<int>(i), ""};
    if (any_no) return {Outcome::Rejected, static_cast<int>(i), ""};
    if (i == trace.size()) return {Outcome::Inconclusive, -1, ""};

    const std::string& a = trace[i];
    std::vector<TermPtr> next;
    TermSet next_seen;
    for (const TermPtr& t : frontier)
      for (const Step& s : runner.steps(t)) {
        if (s.label != a) continue;
        if (!next_seen.insert(s.target).second) continue;
        if (static_cast<long long>(next_seen.size()) >
            budget.max_frontier_terms)
          return {Outcome::BudgetExceeded, -1,
                  "frontier budget exceeded after " + std::to_string(i + 1) +
                      " actions"};
        next.push_back(s.target);
      }
    if (next.empty()) return {Outcome::Inconclusive, -1, ""};
    frontier = std::move(next);
  }
}

ReactivityResult check_reactive(const Monitor& monitor, const Budget& budget) {
  ReactivityResult res;
  res.syntactic = syntactically_reactive(monitor);
  if (res.syntactic) {
    res.status = Reactivity::Reactive;
    return res;
  }
  Runner runner{monitor, budget, {}};
  TermSet visited;
  std::deque<TermPtr> work;
  visited.insert(monitor.root);
  work.push_back(monitor.root);
  while (!work.empty()) {
    TermPtr t = work.front();
    work.pop_front();
    // Weak moves of t: actions available somewhere in its tau closure.
    std::vector<TermPtr> closure = {t};
    TermSet seen = {t};
    if (!runner.saturate(closure, seen)) {
      res.status = Reactivity::UnknownAtBound;
      return res;
    }
    for (const std::string& a : monitor.alphabet->actions()) {
      bool movable = false;
      for (const TermPtr& u : closure) {
        for (const Step& s : runner.steps(u))
          if (s.label == a) {
            movable = true;
            break;
          }
        if (movable) break;
      }
      if (!movable) {
        res.status = Reactivity::NotReactive;
        res.stuck_term = t;
        res.stuck_action = a;
        return res;
      }
    }
    for (const TermPtr& u : closure)
      for (const Step& s : runner.steps(u)) {
        if (s.label == kTau) continue;
        if (!visited.insert(s.target).second) continue;
        if (static_cast<long long>(visited.size()) >
            budget.max_frontier_terms) {
          res.status = Reactivity::UnknownAtBound;
          return res;
        }
        work.push_back(s.target);
      }
  }
  res.status = Reactivity::Reactive;
  return res;
}

}  // namespace montk
