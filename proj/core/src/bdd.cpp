#include "bdd.hpp"

#include <algorithm>
#include <climits>

#include "montk/error.hpp"

namespace montk {

namespace {

inline std::uint64_t pack(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

}  // namespace

BddArena::BddArena(long long node_limit) : node_limit_(node_limit) {
  nodes_.push_back({INT_MAX, kFalse, kFalse});  // false terminal
  nodes_.push_back({INT_MAX, kTrue, kTrue});    // true terminal
}

int BddArena::make(int level, int lo, int hi) {
  if (lo == hi) return lo;
  if (static_cast<std::size_t>(level) >= unique_.size())
    unique_.resize(static_cast<std::size_t>(level) + 1);
  auto& table = unique_[static_cast<std::size_t>(level)];
  auto [it, fresh] = table.emplace(pack(lo, hi), static_cast<int>(nodes_.size()));
  if (fresh) {
    if (static_cast<long long>(nodes_.size()) >= node_limit_)
      throw ResourceGuardError("formula graph limit hit");
    nodes_.push_back({level, lo, hi});
  }
  return it->second;
}

int BddArena::var(int v) { return make(v, kFalse, kTrue); }

int BddArena::apply_or(int a, int b) {
  if (a == b || b == kFalse) return a;
  if (a == kFalse) return b;
  if (a == kTrue || b == kTrue) return kTrue;
  if (a > b) std::swap(a, b);
  auto [it, fresh] = memo_or_.emplace(pack(a, b), -1);
  if (!fresh) return it->second;
  const Node na = nodes_[static_cast<std::size_t>(a)];
  const Node nb = nodes_[static_cast<std::size_t>(b)];
  int level = std::min(na.level, nb.level);
  int alo = na.level == level ? na.lo : a;
  int ahi = na.level == level ? na.hi : a;
  int blo = nb.level == level ? nb.lo : b;
  int bhi = nb.level == level ? nb.hi : b;
  int r = make(level, apply_or(alo, blo), apply_or(ahi, bhi));
  memo_or_[pack(a, b)] = r;  // recursion may rehash, so do not reuse `it`
  return r;
}

int BddArena::apply_and(int a, int b) {
  if (a == b || b == kTrue) return a;
  if (a == kTrue) return b;
  if (a == kFalse || b == kFalse) return kFalse;
  if (a > b) std::swap(a, b);
  auto [it, fresh] = memo_and_.emplace(pack(a, b), -1);
  if (!fresh) return it->second;
  const Node na = nodes_[static_cast<std::size_t>(a)];
  const Node nb = nodes_[static_cast<std::size_t>(b)];
  int level = std::min(na.level, nb.level);
  int alo = na.level == level ? na.lo : a;
  int ahi = na.level == level ? na.hi : a;
  int blo = nb.level == level ? nb.lo : b;
  int bhi = nb.level == level ? nb.hi : b;
  int r = make(level, apply_and(alo, blo), apply_and(ahi, bhi));
  memo_and_[pack(a, b)] = r;
  return r;
}

int BddArena::from_cubes(const std::vector<std::vector<int>>& cubes) {
  int f = kFalse;
  for (const std::vector<int>& cube : cubes) {
    int c = kTrue;
    for (auto it = cube.rbegin(); it != cube.rend(); ++it) c = make(*it, kFalse, c);
    f = apply_or(f, c);
  }
  return f;
}

int BddArena::substitute(int f, const std::vector<int>& replacement) {
  std::unordered_map<int, int> memo;
  // Iterative two-phase walk; recursion depth would follow the longest
  // variable chain, which for subset-construction diagrams is the number of
  // automaton states.
  std::vector<int> stack = {f};
  while (!stack.empty()) {
    int n = stack.back();
    if (n <= kTrue || memo.count(n)) {
      stack.pop_back();
      continue;
    }
    const Node node = nodes_[static_cast<std::size_t>(n)];
    auto done = [&](int m) { return m <= kTrue || memo.count(m) != 0; };
    if (done(node.lo) && done(node.hi)) {
      int lo = node.lo <= kTrue ? node.lo : memo[node.lo];
      int hi = node.hi <= kTrue ? node.hi : memo[node.hi];
      int g = static_cast<std::size_t>(node.level) < replacement.size()
                  ? replacement[static_cast<std::size_t>(node.level)]
                  : kFalse;
      // Monotone Shannon expansion: f = (v and f_hi) or f_lo.
      memo[n] = apply_or(apply_and(g, hi), lo);
      stack.pop_back();
    } else {
      if (!done(node.hi)) stack.push_back(node.hi);
      if (!done(node.lo)) stack.push_back(node.lo);
    }
  }
  return f <= kTrue ? f : memo[f];
}

bool BddArena::eval(int f, const std::vector<char>& assignment) const {
  while (f > kTrue) {
    const Node& n = nodes_[static_cast<std::size_t>(f)];
    bool on = static_cast<std::size_t>(n.level) < assignment.size() &&
              assignment[static_cast<std::size_t>(n.level)] != 0;
    f = on ? n.hi : n.lo;
  }
  return f == kTrue;
}

Dfa bdd_subset_dfa(BddArena& bdd, const AlphabetPtr& alphabet, int initial,
                   const std::vector<std::vector<int>>& rows,
                   const std::vector<char>& accepting,
                   const PowersetLimits& limits) {
  Dfa dfa;
  dfa.alphabet = alphabet;
  const std::size_t acts = alphabet->size();

  std::unordered_map<int, int> index;  // function id -> dfa state
  std::vector<int> fns;
  std::vector<int> work;
  auto intern = [&](int f) -> int {
    auto [it, fresh] = index.emplace(f, static_cast<int>(fns.size()));
    if (fresh) {
      if (static_cast<long long>(fns.size()) >= limits.max_states)
        throw ResourceGuardError("state limit hit during determinization");
      fns.push_back(f);
      work.push_back(it->second);
    }
    return it->second;
  };

  dfa.initial = intern(initial);
  for (std::size_t head = 0; head < work.size(); ++head) {
    int id = work[head];
    if (static_cast<int>(dfa.delta.size()) <= id)
      dfa.delta.resize(static_cast<size_t>(id) + 1, std::vector<int>(acts, -1));
    for (std::size_t a = 0; a < acts; ++a)
      dfa.delta[static_cast<size_t>(id)][a] =
          intern(bdd.substitute(fns[static_cast<size_t>(id)], rows[a]));
  }

  dfa.num_states = static_cast<int>(fns.size());
  dfa.delta.resize(static_cast<size_t>(dfa.num_states),
                   std::vector<int>(acts, -1));
  dfa.accepting.assign(static_cast<size_t>(dfa.num_states), 0);
  dfa.state_names.reserve(static_cast<size_t>(dfa.num_states));
  for (int i = 0; i < dfa.num_states; ++i) {
    dfa.accepting[static_cast<size_t>(i)] =
        bdd.eval(fns[static_cast<size_t>(i)], accepting) ? 1 : 0;
    dfa.state_names.push_back("q" + std::to_string(i));
  }
  return dfa;
}

}  // namespace montk
