#include "smgame/tree.hpp"

#include <stdexcept>

namespace smgame {

ProposalTree proposal_tree(const PlayTrace& trace) {
  if (!trace.naive)
    throw std::invalid_argument("proposal_tree requires a naive-play trace");
  const Instance& inst = trace.inst;
  int k = (int)trace.elements.size();
  ProposalTree tree;
  tree.prior.assign(k + 1, 0);
  tree.direct_parent.assign(k + 1, 0);
  tree.parent_set.assign(k + 1, {});
  tree.children.assign(k + 1, {});

  std::vector<int> last_of_boy(inst.n + 1, 0);   // boy's latest element
  std::vector<int> fulfilled(inst.n + 1, 0);     // girl's current acceptance
  std::vector<int> expelled_by(inst.n + 1, 0);   // element that last kicked the boy

  for (const auto& el : trace.elements) {
    tree.prior[el.id] = last_of_boy[el.boy];
    if (!el.accepted) {
      tree.direct_parent[el.id] = fulfilled[el.girl];
    } else if (tree.prior[el.id] == 0) {
      tree.direct_parent[el.id] = 0;
    } else if (!trace.elements[tree.prior[el.id] - 1].accepted) {
      tree.direct_parent[el.id] = tree.prior[el.id];
    } else {
      tree.direct_parent[el.id] = expelled_by[el.boy];
    }
    if (el.accepted) {
      if (el.displaced) expelled_by[el.displaced] = el.id;
      fulfilled[el.girl] = el.id;
    }
    last_of_boy[el.boy] = el.id;
  }

  // The parent set looks across the whole trace, not just earlier elements:
  // anyone who outranks this boy at the girl he was pushed away from.
  const auto& rank = inst.girl_rank();
  for (const auto& el : trace.elements) {
    GirlId g = el.accepted
                   ? (tree.prior[el.id] ? trace.elements[tree.prior[el.id] - 1].girl : 0)
                   : el.girl;
    if (!g) continue;
    for (const auto& other : trace.elements)
      if (other.girl == g && rank[g][other.boy] < rank[g][el.boy])
        tree.parent_set[el.id].push_back(other.id);
  }

  for (int id = 1; id <= k; ++id) tree.children[tree.direct_parent[id]].push_back(id);
  return tree;
}

std::vector<int> childless_elements(const ProposalTree& tree) {
  std::vector<int> out;
  for (int id = 1; id < (int)tree.children.size(); ++id)
    if (tree.children[id].empty()) out.push_back(id);
  return out;
}

}  // namespace smgame
