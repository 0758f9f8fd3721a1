// Iterated settlement: run the proposal engine, permanently fix every boy
// whose girl nobody else ever proposed to, remove them, repeat on the rest.
// The result weakly improves on the plain engine outcome for every boy and
// no group of boys can jointly do better, though individual blocking pairs
// may remain.
#pragma once

#include "smgame/engine.hpp"

#include <map>
#include <utility>
#include <vector>

namespace smgame {

struct CoalitionIteration {
  std::vector<BoyId> survivors;                     // boys entering this pass
  std::vector<std::pair<BoyId, GirlId>> fixed;      // pairs settled this pass
};

struct CoalitionStableResult {
  Matching matching;
  std::vector<CoalitionIteration> iterations;
  std::map<BoyId, GirlId> opt;  // settled girl per boy; equals the matching
};

CoalitionStableResult coalition_stable_matching(const Instance& inst);

// Position of each boy's settled girl minus the position of his engine girl
// in his own list (0-based positions, so every entry is <= 0).  Slot 0
// unused.
std::vector<int> compare_with_gs(const Instance& inst);

}  // namespace smgame
