#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "montk/automata.hpp"

namespace montk {

// Shared, reduced, ordered binary decision diagrams for the positive
// transition formulas of alternating automata.  Everything built here is
// monotone (atoms combined by conjunction and disjunction only), so the
// diagrams never need complement edges.  Node ids are canonical: equal
// functions always get the same id, which lets callers use ids directly as
// state keys when determinizing.
class BddArena {
 public:
  static constexpr int kFalse = 0;
  static constexpr int kTrue = 1;

  explicit BddArena(long long node_limit);

  int var(int v);
  int apply_or(int a, int b);
  int apply_and(int a, int b);

  // Disjunction of conjunctions; each cube must be sorted ascending.
  int from_cubes(const std::vector<std::vector<int>>& cubes);

  // Simultaneous substitution of every variable v by replacement[v].
  int substitute(int f, const std::vector<int>& replacement);

  bool eval(int f, const std::vector<char>& assignment) const;

  long long num_nodes() const { return static_cast<long long>(nodes_.size()); }

 private:
  struct Node {
    int level;  // variable id; terminals sit below every variable
    int lo;
    int hi;
  };

  int make(int level, int lo, int hi);

  std::vector<Node> nodes_;
  // One unique table per level, keyed by the (lo, hi) pair.
  std::vector<std::unordered_map<std::uint64_t, int>> unique_;
  std::unordered_map<std::uint64_t, int> memo_or_;
  std::unordered_map<std::uint64_t, int> memo_and_;
  long long node_limit_;
};

// Breadth-first determinization over canonical formula ids: DFA states are
// the distinct obligation functions reachable from `initial` by replacing
// every variable q with rows[action][q].  A state accepts when its function
// is true under the accepting assignment.
Dfa bdd_subset_dfa(BddArena& bdd, const AlphabetPtr& alphabet, int initial,
                   const std::vector<std::vector<int>>& rows,
                   const std::vector<char>& accepting,
                   const PowersetLimits& limits);

}  // namespace montk
