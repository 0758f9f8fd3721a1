// Ancestry over trace elements: each proposal is explained by the proposal
// that forced it.  A refusal hangs off the element holding the girl at that
// moment; an acceptance hangs off whatever pushed the boy onward (his own
// refusal, or the element that expelled him); an accepted first proposal
// hangs off an artificial root.
#pragma once

#include "smgame/engine.hpp"

#include <vector>

namespace smgame {

struct ProposalTree {
  // All indexed by element id; slot 0 is the artificial root.
  std::vector<int> prior;          // boy's previous own element, 0 if none
  std::vector<int> direct_parent;  // 0 = root
  std::vector<std::vector<int>> parent_set;
  std::vector<std::vector<int>> children;
};

// Requires naive play; the ancestry rules presume boys walk their own
// preference order.
ProposalTree proposal_tree(const PlayTrace& trace);

// Element ids with no children.  Final proposals of stuck boys are always
// here, but so are elements whose holder was ousted by a first-time
// proposer, so this is a diagnostic rather than a detector.
std::vector<int> childless_elements(const ProposalTree& tree);

}  // namespace smgame
