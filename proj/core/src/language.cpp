#include <deque>
#include <map>

#include "montk/automata.hpp"
#include "montk/error.hpp"

namespace montk {

namespace {

int run_dfa(const Dfa& dfa, const Trace& trace) {
  int s = dfa.initial;
  for (const std::string& action : trace)
    s = dfa.delta[static_cast<size_t>(s)]
                 [static_cast<size_t>(dfa.alphabet->index_of(action))];
  return s;
}

struct PairSearch {
  // BFS over pairs of states with parent links for path reconstruction.
  const Dfa& a;
  const Dfa& b;
  std::map<std::pair<int, int>, int> index;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> parent;
  std::vector<int> via_action;
  std::deque<int> work;

  int intern(std::pair<int, int> p, int from, int action) {
    auto it = index.find(p);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(pairs.size());
    index.emplace(p, id);
    pairs.push_back(p);
    parent.push_back(from);
    via_action.push_back(action);
    work.push_back(id);
    return id;
  }

  Trace path_to(int id) const {
    std::vector<int> actions;
    for (int cur = id; parent[static_cast<size_t>(cur)] >= 0;
         cur = parent[static_cast<size_t>(cur)])
      actions.push_back(via_action[static_cast<size_t>(cur)]);
    Trace out;
    for (auto it = actions.rbegin(); it != actions.rend(); ++it)
      out.push_back(a.alphabet->action(static_cast<size_t>(*it)));
    return out;
  }
};

}  // namespace

LanguageCompare dfa_language_equal(const Dfa& a, const Dfa& b) {
  require_same_alphabet(a.alphabet, b.alphabet);
  PairSearch search{a, b, {}, {}, {}, {}, {}};
  search.intern({a.initial, b.initial}, -1, -1);
  while (!search.work.empty()) {
    int id = search.work.front();
    search.work.pop_front();
    auto [x, y] = search.pairs[static_cast<size_t>(id)];
    bool ax = a.accepting[static_cast<size_t>(x)] != 0;
    bool by = b.accepting[static_cast<size_t>(y)] != 0;
    if (ax != by) {
      LanguageCompare out;
      out.equal = false;
      out.counterexample = search.path_to(id);
      out.side = ax ? 0 : 1;
      return out;
    }
    for (std::size_t act = 0; act < a.alphabet->size(); ++act)
      search.intern({a.delta[static_cast<size_t>(x)][act],
                     b.delta[static_cast<size_t>(y)][act]},
                    id, static_cast<int>(act));
  }
  return {};
}

bool lasso_member(const Dfa& dfa, const Lasso& lasso) {
  require_over_alphabet(lasso.u, dfa.alphabet);
  require_over_alphabet(lasso.v, dfa.alphabet);
  if (lasso.v.empty())
    throw PreconditionError("lasso cycle part must be non-empty");
  int s = dfa.initial;
  if (dfa.accepting[static_cast<size_t>(s)]) return true;
  auto step = [&](const std::string& action) {
    s = dfa.delta[static_cast<size_t>(s)]
                 [static_cast<size_t>(dfa.alphabet->index_of(action))];
    return dfa.accepting[static_cast<size_t>(s)] != 0;
  };
  for (const std::string& action : lasso.u)
    if (step(action)) return true;
  // After num_states + 1 pumps every (state, cycle offset) pair has repeated.
  for (int round = 0; round <= dfa.num_states; ++round)
    for (const std::string& action : lasso.v)
      if (step(action)) return true;
  return false;
}

std::optional<Trace> distinguishing_suffix(const Dfa& dfa, const Trace& u1,
                                           const Trace& u2) {
  require_over_alphabet(u1, dfa.alphabet);
  require_over_alphabet(u2, dfa.alphabet);
  PairSearch search{dfa, dfa, {}, {}, {}, {}, {}};
  search.intern({run_dfa(dfa, u1), run_dfa(dfa, u2)}, -1, -1);
  while (!search.work.empty()) {
    int id = search.work.front();
    search.work.pop_front();
    auto [x, y] = search.pairs[static_cast<size_t>(id)];
    if ((dfa.accepting[static_cast<size_t>(x)] != 0) !=
        (dfa.accepting[static_cast<size_t>(y)] != 0))
      return search.path_to(id);
    for (std::size_t act = 0; act < dfa.alphabet->size(); ++act)
      search.intern({dfa.delta[static_cast<size_t>(x)][act],
                     dfa.delta[static_cast<size_t>(y)][act]},
                    id, static_cast<int>(act));
  }
  return std::nullopt;
}

}  // namespace montk
