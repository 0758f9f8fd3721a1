// Shared helpers for the test binaries.
#pragma once

#include "smgame/core.hpp"

#include <algorithm>
#include <initializer_list>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace testutil {

inline std::string fx(const char* name) {
  return std::string(SMGAME_FIXTURES "/") + name;
}

inline smgame::Matching make_matching(int n,
                                      std::initializer_list<std::pair<int, int>> pairs) {
  smgame::Matching m(n);
  for (auto [b, g] : pairs) m.couple(b, g);
  return m;
}

// Brute force over all n! complete matchings; usable for n <= 7 or so.
inline std::vector<smgame::Matching> all_stable_matchings(const smgame::Instance& inst) {
  std::vector<int> perm(inst.n);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<smgame::Matching> out;
  do {
    smgame::Matching m(inst.n);
    for (int b = 1; b <= inst.n; ++b) m.couple(b, perm[b - 1]);
    if (smgame::blocking_pairs(inst, m).empty()) out.push_back(m);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace testutil
