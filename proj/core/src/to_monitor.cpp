#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "montk/automata.hpp"
#include "montk/error.hpp"
#include "setops.hpp"

namespace montk {

namespace {

constexpr int kMaxDescentDepth = 10000;

// States from which an accepting state is reachable.
std::vector<char> co_reachable(const Nfa& nfa) {
  std::vector<std::vector<int>> rev(static_cast<size_t>(nfa.num_states));
  for (int s = 0; s < nfa.num_states; ++s)
    for (const auto& row : nfa.delta[static_cast<size_t>(s)])
      for (int t : row) rev[static_cast<size_t>(t)].push_back(s);
  std::vector<char> live(static_cast<size_t>(nfa.num_states), 0);
  std::deque<int> work;
  for (int s = 0; s < nfa.num_states; ++s)
    if (nfa.accepting[static_cast<size_t>(s)]) {
      live[static_cast<size_t>(s)] = 1;
      work.push_back(s);
    }
  while (!work.empty()) {
    int s = work.front();
    work.pop_front();
    for (int p : rev[static_cast<size_t>(s)])
      if (!live[static_cast<size_t>(p)]) {
        live[static_cast<size_t>(p)] = 1;
        work.push_back(p);
      }
  }
  return live;
}

struct Descent {
  const Nfa& nfa;
  TermPtr verdict_term;
  std::string prefix;
  int counter = 0;
  int depth = 0;
  std::vector<char> live;
  std::map<std::vector<int>, std::string> open;     // sets on the stack
  std::map<std::vector<int>, TermPtr> done;         // completed closed subtrees

  bool any_live(const std::vector<int>& S) const {
    for (int s : S)
      if (live[static_cast<size_t>(s)]) return true;
    return false;
  }

  bool accepting(const std::vector<int>& S) const {
    for (int s : S)
      if (nfa.accepting[static_cast<size_t>(s)]) return true;
    return false;
  }

  // Emits the monitor for the residual language at S.  `refs` collects the
  // names of still-open binders the subtree mentions; a subtree with no such
  // references is closed and can be shared.
  TermPtr walk(const std::vector<int>& S, std::set<std::string>& refs) {
    if (accepting(S)) return verdict_term;
    if (auto it = done.find(S); it != done.end()) return it->second;
    if (auto it = open.find(S); it != open.end()) {
      refs.insert(it->second);
      return Term::var(it->second);
    }
    if (++depth > kMaxDescentDepth)
      throw ResourceGuardError("monitor rebuild recursion too deep");
    std::string name = prefix + std::to_string(counter++);
    open.emplace(S, name);
    std::set<std::string> local;
    TermPtr body = nullptr;
    for (std::size_t a = 0; a < nfa.alphabet->size(); ++a) {
      std::vector<int> T;
      for (int s : S)
        T = setops::set_union(T, nfa.delta[static_cast<size_t>(s)][a]);
      if (!any_live(T)) continue;
      TermPtr child = walk(T, local);
      TermPtr summand = Term::prefix(nfa.alphabet->action(a), std::move(child));
      body = body ? Term::choice(std::move(body), std::move(summand))
                  : std::move(summand);
    }
    open.erase(S);
    --depth;
    if (!body) body = Term::end();  // live non-accepting sets have successors
    bool self = local.erase(name) > 0;
    if (self) body = Term::rec(name, std::move(body));
    if (local.empty()) done.emplace(S, body);
    refs.insert(local.begin(), local.end());
    return body;
  }
};

}  // namespace

Monitor nfa_to_monitor(const Nfa& nfa, Verdict verdict,
                       const std::string& binder_prefix) {
  if (!nfa.extension_closed)
    throw PreconditionError(
        "monitor rebuild requires an extension-closed automaton");
  Descent d{nfa, Term::verdict_of(verdict), binder_prefix,
            0,   0,
            co_reachable(nfa),
            {},  {}};
  std::vector<int> init = nfa.initial;
  std::sort(init.begin(), init.end());
  init.erase(std::unique(init.begin(), init.end()), init.end());
  TermPtr root;
  if (init.empty() || !d.any_live(init)) {
    root = Term::end();
  } else {
    std::set<std::string> refs;
    root = d.walk(init, refs);
  }
  return make_monitor(std::move(root), nfa.alphabet);
}

Monitor dfa_to_monitor(const Dfa& dfa, Verdict verdict,
                       const std::string& binder_prefix) {
  if (!dfa.extension_closed)
    throw PreconditionError(
        "monitor rebuild requires an extension-closed automaton");
  Nfa view;
  view.alphabet = dfa.alphabet;
  view.num_states = dfa.num_states;
  view.initial = {dfa.initial};
  view.accepting = dfa.accepting;
  view.state_names = dfa.state_names;
  view.extension_closed = true;
  view.delta.resize(static_cast<size_t>(dfa.num_states));
  for (int s = 0; s < dfa.num_states; ++s) {
    view.delta[static_cast<size_t>(s)].reserve(dfa.alphabet->size());
    for (int t : dfa.delta[static_cast<size_t>(s)])
      view.delta[static_cast<size_t>(s)].push_back({t});
  }
  return nfa_to_monitor(view, verdict, binder_prefix);
}

}  // namespace montk
