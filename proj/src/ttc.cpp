#include "smgame/ttc.hpp"

#include <algorithm>
#include <stdexcept>

namespace smgame {

namespace {

// Out-neighbours of b: holders of every girl he strictly prefers to his own.
std::vector<std::vector<BoyId>> pointing_graph(const Instance& inst, const Matching& m) {
  std::vector<std::vector<BoyId>> adj(inst.n + 1);
  for (BoyId b = 1; b <= inst.n; ++b) {
    int own = inst.boy_level(b, m.girl_of[b]);
    for (GirlId g = 1; g <= inst.n; ++g)
      if (inst.boy_level(b, g) < own) adj[b].push_back(m.boy_of[g]);
  }
  return adj;
}

TradingCycle to_cycle(const Matching& m, const std::vector<BoyId>& path) {
  TradingCycle cyc;
  for (size_t i = 0; i < path.size(); ++i)
    cyc.push_back({path[i], m.girl_of[path[i]], m.girl_of[path[(i + 1) % path.size()]]});
  return cyc;
}

}  // namespace

std::vector<TradingCycle> find_trading_cycles(const Instance& inst, const Matching& m) {
  if (!m.complete()) throw std::invalid_argument("find_trading_cycles needs a complete matching");
  auto adj = pointing_graph(inst, m);
  std::vector<TradingCycle> out;
  std::vector<BoyId> path;
  std::vector<bool> onpath(inst.n + 1, false);
  // Each elementary cycle is found once, rooted at its smallest boy.
  for (BoyId s = 1; s <= inst.n; ++s) {
    path = {s};
    onpath[s] = true;
    auto dfs = [&](auto&& self, BoyId v) -> void {
      for (BoyId w : adj[v]) {
        if (w == s) {
          out.push_back(to_cycle(m, path));
        } else if (w > s && !onpath[w]) {
          onpath[w] = true;
          path.push_back(w);
          self(self, w);
          path.pop_back();
          onpath[w] = false;
        }
      }
    };
    dfs(dfs, s);
    onpath[s] = false;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Matching ttc_improve(const Instance& inst, const Matching& m,
                     std::vector<TradingCycle>* applied) {
  if (!m.complete()) throw std::invalid_argument("ttc_improve needs a complete matching");
  if (applied) applied->clear();
  Matching out = m;
  std::vector<std::vector<GirlId>> flat(inst.n + 1);
  for (BoyId b = 1; b <= inst.n; ++b) flat[b] = inst.boys[b].flatten();
  std::vector<bool> settled_boy(inst.n + 1, false), settled_girl(inst.n + 1, false);
  std::vector<int> cursor(inst.n + 1, 0);
  int remaining = inst.n;

  while (remaining > 0) {
    std::vector<BoyId> target(inst.n + 1, 0);
    for (BoyId b = 1; b <= inst.n; ++b) {
      if (settled_boy[b]) continue;
      while (settled_girl[flat[b][cursor[b]]]) ++cursor[b];
      target[b] = out.boy_of[flat[b][cursor[b]]];
    }
    // Every unsettled boy has one out-edge, so following targets from any
    // start must loop; colour the walk to cut the cycles out.
    std::vector<int> colour(inst.n + 1, 0);  // 0 new, 1 on walk, 2 done
    for (BoyId b = 1; b <= inst.n; ++b) {
      if (settled_boy[b] || colour[b]) continue;
      std::vector<BoyId> walk;
      BoyId v = b;
      while (!colour[v]) {
        colour[v] = 1;
        walk.push_back(v);
        v = target[v];
      }
      if (colour[v] == 1) {
        auto it = std::find(walk.begin(), walk.end(), v);
        std::vector<BoyId> cycle(it, walk.end());
        auto mn = std::min_element(cycle.begin(), cycle.end());
        std::rotate(cycle.begin(), mn, cycle.end());
        if (cycle.size() > 1 && applied) applied->push_back(to_cycle(out, cycle));
        std::vector<GirlId> gets(cycle.size());
        for (size_t i = 0; i < cycle.size(); ++i)
          gets[i] = out.girl_of[target[cycle[i]]];
        for (size_t i = 0; i < cycle.size(); ++i) out.couple(cycle[i], gets[i]);
        for (BoyId c : cycle) {
          settled_boy[c] = true;
          settled_girl[out.girl_of[c]] = true;
          --remaining;
        }
      }
      for (BoyId w : walk) colour[w] = 2;
    }
  }
  return out;
}

}  // namespace smgame
