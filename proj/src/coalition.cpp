#include "smgame/coalition.hpp"

#include <algorithm>

namespace smgame {

namespace {

// Restriction of the instance to the surviving ids, renumbered contiguously.
// Girls' relative order is untouched, so ranks need no re-normalization.
Instance restrict_to(const Instance& inst, const std::vector<BoyId>& boys,
                     const std::vector<GirlId>& girls) {
  int k = (int)boys.size();
  std::vector<int> boy_new(inst.n + 1, 0), girl_new(inst.n + 1, 0);
  for (int i = 0; i < k; ++i) boy_new[boys[i]] = i + 1;
  for (int i = 0; i < (int)girls.size(); ++i) girl_new[girls[i]] = i + 1;
  Instance red;
  red.n = k;
  red.base = inst.base;
  red.boys.assign(k + 1, {});
  red.girls.assign(k + 1, {});
  red.fictitious_boy.assign(k + 1, false);
  red.fictitious_girl.assign(k + 1, false);
  for (BoyId b : boys) {
    auto& dst = red.boys[boy_new[b]];
    for (const auto& lv : inst.boys[b].levels) {
      std::vector<GirlId> kept;
      for (GirlId g : lv)
        if (girl_new[g]) kept.push_back(girl_new[g]);
      if (!kept.empty()) dst.levels.push_back(std::move(kept));
    }
    red.fictitious_boy[boy_new[b]] = inst.fictitious_boy[b];
  }
  for (GirlId g : girls) {
    auto& dst = red.girls[girl_new[g]];
    for (BoyId b : inst.girls[g])
      if (boy_new[b]) dst.push_back(boy_new[b]);
    red.fictitious_girl[girl_new[g]] = inst.fictitious_girl[g];
  }
  return red;
}

}  // namespace

CoalitionStableResult coalition_stable_matching(const Instance& inst) {
  CoalitionStableResult res;
  res.matching = Matching(inst.n);
  std::vector<BoyId> boys(inst.n);
  std::vector<GirlId> girls(inst.n);
  for (int i = 0; i < inst.n; ++i) boys[i] = girls[i] = i + 1;

  while (!boys.empty()) {
    Instance red = restrict_to(inst, boys, girls);
    auto trace = run_gale_shapley(red);
    auto hp = hopeless_pairs(trace);

    CoalitionIteration it;
    it.survivors = boys;
    std::vector<bool> drop_boy(inst.n + 1, false), drop_girl(inst.n + 1, false);
    for (auto [rb, rg] : hp) {
      BoyId b = boys[rb - 1];
      GirlId g = girls[rg - 1];
      it.fixed.push_back({b, g});
      res.matching.couple(b, g);
      res.opt[b] = g;
      drop_boy[b] = true;
      drop_girl[g] = true;
    }
    res.iterations.push_back(std::move(it));

    std::erase_if(boys, [&](BoyId b) { return drop_boy[b]; });
    std::erase_if(girls, [&](GirlId g) { return drop_girl[g]; });
  }
  return res;
}

std::vector<int> compare_with_gs(const Instance& inst) {
  auto gs = run_gale_shapley(inst).final;
  auto co = coalition_stable_matching(inst).matching;
  const auto& rank = inst.boy_rank();
  std::vector<int> delta(inst.n + 1, 0);
  for (BoyId b = 1; b <= inst.n; ++b)
    delta[b] = rank[b][co.girl_of[b]] - rank[b][gs.girl_of[b]];
  return delta;
}

}  // namespace smgame
