#include <deque>
#include <map>

#include "montk/automata.hpp"
#include "montk/error.hpp"
#include "bdd.hpp"
#include "setops.hpp"

namespace montk {

namespace {

std::string set_name(const std::vector<int>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[static_cast<size_t>(i)]);
  }
  return out + "}";
}

}  // namespace

Nfa afa_to_nfa(const Afa& afa, const PowersetLimits& limits) {
  Nfa nfa;
  nfa.alphabet = afa.alphabet;
  const std::size_t acts = afa.alphabet->size();

  std::map<std::vector<int>, int> index;
  std::vector<std::vector<int>> sets;
  std::deque<int> work;
  auto intern = [&](const std::vector<int>& s) -> int {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    if (static_cast<long long>(sets.size()) >= limits.max_states)
      throw ResourceGuardError("state limit hit while removing alternation");
    int id = static_cast<int>(sets.size());
    index.emplace(s, id);
    sets.push_back(s);
    work.push_back(id);
    return id;
  };

  // One obligation set per cube of the initial formula.
  for (const std::vector<int>& cube : afa.initial.cubes)
    nfa.initial.push_back(intern(cube));
  std::sort(nfa.initial.begin(), nfa.initial.end());
  nfa.initial.erase(std::unique(nfa.initial.begin(), nfa.initial.end()),
                    nfa.initial.end());

  while (!work.empty()) {
    int id = work.front();
    work.pop_front();
    const std::vector<int> S = sets[static_cast<size_t>(id)];  // copy: sets grows
    if (static_cast<int>(nfa.delta.size()) <= id)
      nfa.delta.resize(static_cast<size_t>(id) + 1,
                       std::vector<std::vector<int>>(acts));
    for (std::size_t a = 0; a < acts; ++a) {
      // Choose one cube per member and take the union; a member with a false
      // transition formula kills the whole obligation.
      std::vector<const Dnf*> parts;
      bool dead = false;
      long long combos = 1;
      for (int s : S) {
        const Dnf& d = afa.delta[static_cast<size_t>(s)][a];
        if (d.is_false()) {
          dead = true;
          break;
        }
        combos *= static_cast<long long>(d.cubes.size());
        if (combos > limits.max_combinations)
          throw ResourceGuardError(
              "combination limit hit while removing alternation");
        parts.push_back(&d);
      }
      if (dead) continue;
      std::vector<std::vector<int>> successors = {{}};
      for (const Dnf* d : parts) {
        std::vector<std::vector<int>> grown;
        grown.reserve(successors.size() * d->cubes.size());
        for (const std::vector<int>& acc : successors)
          for (const std::vector<int>& cube : d->cubes)
            grown.push_back(setops::set_union(acc, cube));
        successors = setops::minimal_antichain(std::move(grown));
      }
      std::vector<int>& row = nfa.delta[static_cast<size_t>(id)][a];
      for (const std::vector<int>& T : successors) row.push_back(intern(T));
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
    }
  }

  nfa.num_states = static_cast<int>(sets.size());
  nfa.delta.resize(static_cast<size_t>(nfa.num_states),
                   std::vector<std::vector<int>>(acts));
  nfa.accepting.assign(static_cast<size_t>(nfa.num_states), 0);
  nfa.state_names.reserve(static_cast<size_t>(nfa.num_states));
  for (int i = 0; i < nfa.num_states; ++i) {
    const std::vector<int>& S = sets[static_cast<size_t>(i)];
    bool all = true;
    for (int s : S) all = all && afa.accepting[static_cast<size_t>(s)];
    nfa.accepting[static_cast<size_t>(i)] = all ? 1 : 0;
    nfa.state_names.push_back(set_name(S));
  }
  return nfa;
}

Dfa nfa_to_dfa(const Nfa& nfa, const PowersetLimits& limits) {
  Dfa dfa;
  dfa.alphabet = nfa.alphabet;
  dfa.extension_closed = nfa.extension_closed;
  const std::size_t acts = nfa.alphabet->size();

  std::map<std::vector<int>, int> index;
  std::vector<std::vector<int>> sets;
  std::deque<int> work;
  auto intern = [&](std::vector<int> s) -> int {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    if (static_cast<long long>(sets.size()) >= limits.max_states)
      throw ResourceGuardError("state limit hit during determinization");
    int id = static_cast<int>(sets.size());
    index.emplace(s, id);
    sets.push_back(std::move(s));
    work.push_back(id);
    return id;
  };

  std::vector<int> init = nfa.initial;
  std::sort(init.begin(), init.end());
  init.erase(std::unique(init.begin(), init.end()), init.end());
  dfa.initial = intern(std::move(init));

  while (!work.empty()) {
    int id = work.front();
    work.pop_front();
    const std::vector<int> S = sets[static_cast<size_t>(id)];
    if (static_cast<int>(dfa.delta.size()) <= id)
      dfa.delta.resize(static_cast<size_t>(id) + 1, std::vector<int>(acts, -1));
    for (std::size_t a = 0; a < acts; ++a) {
      std::vector<int> T;
      for (int s : S)
        T = setops::set_union(T, nfa.delta[static_cast<size_t>(s)][a]);
      dfa.delta[static_cast<size_t>(id)][a] = intern(std::move(T));
    }
  }

  dfa.num_states = static_cast<int>(sets.size());
  dfa.delta.resize(static_cast<size_t>(dfa.num_states),
                   std::vector<int>(acts, -1));
  dfa.accepting.assign(static_cast<size_t>(dfa.num_states), 0);
  dfa.state_names.reserve(static_cast<size_t>(dfa.num_states));
  for (int i = 0; i < dfa.num_states; ++i) {
    bool any = false;
    for (int s : sets[static_cast<size_t>(i)])
      any = any || nfa.accepting[static_cast<size_t>(s)];
    dfa.accepting[static_cast<size_t>(i)] = any ? 1 : 0;
    dfa.state_names.push_back(set_name(sets[static_cast<size_t>(i)]));
  }
  return dfa;
}

Dfa afa_to_dfa(const Afa& afa, const PowersetLimits& limits) {
  const std::size_t acts = afa.alphabet->size();
  // Sharing the formula graphs keeps the conjunction-of-disjunction
  // formulas of parallel monitors compact where their cube form explodes.
  BddArena bdd(limits.max_formula_nodes);
  std::vector<std::vector<int>> rows(
      acts, std::vector<int>(static_cast<size_t>(afa.num_states), BddArena::kFalse));
  for (int q = 0; q < afa.num_states; ++q)
    for (std::size_t a = 0; a < acts; ++a)
      rows[a][static_cast<size_t>(q)] =
          bdd.from_cubes(afa.delta[static_cast<size_t>(q)][a].cubes);
  return bdd_subset_dfa(bdd, afa.alphabet, bdd.from_cubes(afa.initial.cubes),
                        rows, afa.accepting, limits);
}

bool nfa_accepts(const Nfa& nfa, const Trace& trace) {
  require_over_alphabet(trace, nfa.alphabet);
  std::vector<int> cur = nfa.initial;
  for (const std::string& action : trace) {
    int a = nfa.alphabet->index_of(action);
    std::vector<int> next;
    for (int s : cur)
      next = setops::set_union(next,
                               nfa.delta[static_cast<size_t>(s)]
                                        [static_cast<size_t>(a)]);
    cur = std::move(next);
  }
  for (int s : cur)
    if (nfa.accepting[static_cast<size_t>(s)]) return true;
  return false;
}

bool dfa_accepts(const Dfa& dfa, const Trace& trace) {
  require_over_alphabet(trace, dfa.alphabet);
  int s = dfa.initial;
  for (const std::string& action : trace) {
    int a = dfa.alphabet->index_of(action);
    s = dfa.delta[static_cast<size_t>(s)][static_cast<size_t>(a)];
  }
  return dfa.accepting[static_cast<size_t>(s)] != 0;
}

Nfa extension_close(const Nfa& nfa) {
  Nfa out = nfa;
  for (int s = 0; s < out.num_states; ++s)
    if (out.accepting[static_cast<size_t>(s)])
      for (auto& row : out.delta[static_cast<size_t>(s)]) row = {s};
  out.extension_closed = true;
  return out;
}

Dfa extension_close(const Dfa& dfa) {
  Dfa out = dfa;
  for (int s = 0; s < out.num_states; ++s)
    if (out.accepting[static_cast<size_t>(s)])
      for (int& target : out.delta[static_cast<size_t>(s)]) target = s;
  out.extension_closed = true;
  return out;
}

}  // namespace montk
