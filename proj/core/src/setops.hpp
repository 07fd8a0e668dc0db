#pragma once

// Internal helpers for sorted int sets (not installed).

#include <algorithm>
#include <vector>

namespace montk::setops {

inline std::vector<int> set_union(const std::vector<int>& a,
                                  const std::vector<int>& b) {
  std::vector<int> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

inline bool subset(const std::vector<int>& small, const std::vector<int>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// Minimal sets only, in (size, lex) order; drops duplicates.
inline std::vector<std::vector<int>> minimal_antichain(
    std::vector<std::vector<int>> sets) {
  std::sort(sets.begin(), sets.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  std::vector<std::vector<int>> keep;
  for (std::vector<int>& s : sets) {
    bool dominated = false;
    for (const std::vector<int>& k : keep)
      if (subset(k, s)) {
        dominated = true;
        break;
      }
    if (!dominated) keep.push_back(std::move(s));
  }
  return keep;
}

}  // namespace montk::setops
