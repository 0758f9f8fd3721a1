#include "smgame/oracle.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace smgame {

namespace {

bool girl_of_less(const Matching& a, const Matching& b) {
  return a.girl_of < b.girl_of;
}

std::vector<std::vector<StaticProfile>> profile_space(const Instance& inst,
                                                      ProfileSpace space) {
  std::vector<std::vector<StaticProfile>> out(inst.n + 1);
  Matching engine;
  if (space == ProfileSpace::Conservative) engine = run_gale_shapley(inst).final;
  for (BoyId b = 1; b <= inst.n; ++b) {
    std::vector<GirlId> head, tail;  // head courted before tail, both ascending
    if (space == ProfileSpace::All) {
      head.resize(inst.n);
      std::iota(head.begin(), head.end(), 1);
    } else {
      int floor = inst.boy_level(b, engine.girl_of[b]);
      for (GirlId g = 1; g <= inst.n; ++g)
        (inst.boy_level(b, g) <= floor ? head : tail).push_back(g);
    }
    do {
      std::vector<GirlId> rest = tail;
      bool more = true;
      while (more) {
        StaticProfile p = head;
        p.insert(p.end(), rest.begin(), rest.end());
        out[b].push_back(std::move(p));
        more = std::next_permutation(rest.begin(), rest.end());
      }
    } while (std::next_permutation(head.begin(), head.end()));
  }
  return out;
}

std::vector<Matching> all_finals(const Instance& inst,
                                 const std::vector<std::vector<StaticProfile>>& prof,
                                 bool parallel) {
  std::int64_t total = 1;
  for (BoyId b = 1; b <= inst.n; ++b) total *= (std::int64_t)prof[b].size();
  std::vector<Matching> finals((size_t)total);
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
  for (std::int64_t idx = 0; idx < total; ++idx) {
    std::vector<StaticProfile> combo(inst.n + 1);
    std::uint64_t rest = (std::uint64_t)idx;
    for (BoyId b = inst.n; b >= 1; --b) {
      combo[b] = prof[b][rest % prof[b].size()];
      rest /= prof[b].size();
    }
    finals[(size_t)idx] = run_static(inst, std::move(combo)).final;
  }
  return finals;
}

OutcomeAtlas build_atlas(const Instance& inst, ProfileSpace space, int cap,
                         bool parallel) {
  if (inst.n > cap) throw std::invalid_argument("atlas cap exceeded");
  OutcomeAtlas atlas;
  atlas.profiles = profile_space(inst, space);
  std::vector<Matching> finals = all_finals(inst, atlas.profiles, parallel);
  atlas.matchings = finals;
  std::sort(atlas.matchings.begin(), atlas.matchings.end(), girl_of_less);
  atlas.matchings.erase(std::unique(atlas.matchings.begin(), atlas.matchings.end()),
                        atlas.matchings.end());
  atlas.outcome_of.resize(finals.size());
  for (size_t i = 0; i < finals.size(); ++i)
    atlas.outcome_of[i] = (std::uint32_t)(std::lower_bound(atlas.matchings.begin(),
                                                           atlas.matchings.end(),
                                                           finals[i], girl_of_less) -
                                          atlas.matchings.begin());
  atlas.best.assign(inst.n + 1, 0);
  atlas.worst.assign(inst.n + 1, 0);
  for (BoyId b = 1; b <= inst.n; ++b) {
    int lo = INT_MAX, hi = -1;
    for (const Matching& m : atlas.matchings) {
      GirlId g = m.girl_of[b];
      int lvl = inst.boy_level(b, g);
      if (lvl < lo || (lvl == lo && g < atlas.best[b])) {
        lo = lvl;
        atlas.best[b] = g;
      }
      if (lvl > hi || (lvl == hi && g < atlas.worst[b])) {
        hi = lvl;
        atlas.worst[b] = g;
      }
    }
  }
  return atlas;
}

}  // namespace

OutcomeAtlas enumerate_static_outcomes(const Instance& inst, ProfileSpace space,
                                       int cap) {
  return build_atlas(inst, space, cap, true);
}

OutcomeAtlas enumerate_static_outcomes_serial(const Instance& inst,
                                              ProfileSpace space, int cap) {
  return build_atlas(inst, space, cap, false);
}

GirlId worst_case_outcome(const Instance& inst, BoyId b, int cap) {
  if (b < 1 || b > inst.n) throw std::invalid_argument("boy id out of range");
  OutcomeAtlas atlas = enumerate_static_outcomes(inst, ProfileSpace::Conservative, cap);
  std::uint64_t stride = 1;
  for (BoyId j = inst.n; j > b; --j) stride *= atlas.profiles[j].size();
  const std::uint64_t own = atlas.profiles[b].size();
  int worst_level = -1;
  GirlId worst_girl = 0;
  for (std::uint64_t idx = 0; idx < atlas.outcome_of.size(); ++idx) {
    if ((idx / stride) % own != 0) continue;  // one visit per opposing combo
    int best_level = INT_MAX;
    GirlId best_girl = 0;
    for (std::uint64_t p = 0; p < own; ++p) {
      GirlId g = atlas.matchings[atlas.outcome_of[idx + p * stride]].girl_of[b];
      int lvl = inst.boy_level(b, g);
      if (lvl < best_level || (lvl == best_level && g < best_girl)) {
        best_level = lvl;
        best_girl = g;
      }
    }
    if (best_level > worst_level) {
      worst_level = best_level;
      worst_girl = best_girl;
    }
  }
  return worst_girl;
}

GameDag enumerate_game_dag(const Instance& inst, int cap) {
  if (inst.n > cap) throw std::invalid_argument("game graph cap exceeded");
  const int n = inst.n;
  const std::uint64_t radix = (std::uint64_t)n + 1;
  auto encode = [&](const std::vector<BoyId>& hold) {
    std::uint64_t key = 0;
    for (int g = n; g >= 1; --g) key = key * radix + (std::uint64_t)hold[g];
    return key;
  };

  GameDag dag;
  {
    // Census over every holder assignment, injective ones only.
    std::vector<BoyId> hold(n + 1, 0);
    while (true) {
      std::uint64_t used = 0;
      bool injective = true;
      int held = 0;
      for (int g = 1; g <= n && injective; ++g) {
        if (hold[g] == 0) continue;
        std::uint64_t bit = 1ull << hold[g];
        injective = !(used & bit);
        used |= bit;
        ++held;
      }
      if (injective) {
        ++dag.total_nodes;
        if (held == n) ++dag.total_terminals;
      }
      int g = 1;
      while (g <= n && hold[g] == n) hold[g++] = 0;
      if (g > n) break;
      ++hold[g];
    }
  }

  std::map<std::uint64_t, int> id_of;
  std::vector<std::vector<BoyId>> holds;
  std::vector<std::vector<int>> out_edges;
  std::vector<int> order;
  auto intern = [&](const std::vector<BoyId>& hold) {
    auto [it, fresh] = id_of.try_emplace(encode(hold), (int)holds.size());
    if (fresh) {
      holds.push_back(hold);
      out_edges.emplace_back();
      order.push_back(it->second);
    }
    return it->second;
  };
  intern(std::vector<BoyId>(n + 1, 0));

  for (size_t qi = 0; qi < order.size(); ++qi) {
    int node = order[qi];
    std::vector<BoyId> hold = holds[node];  // holds may grow under intern
    std::vector<bool> seated(n + 1, false);
    for (int g = 1; g <= n; ++g)
      if (hold[g]) seated[hold[g]] = true;
    std::vector<BoyId> loose;
    for (BoyId b = 1; b <= n; ++b)
      if (!seated[b]) loose.push_back(b);
    if (loose.empty()) continue;

    std::set<int> targets;
    std::vector<GirlId> pick(loose.size(), 1);
    while (true) {
      std::vector<BoyId> next = hold;
      for (size_t i = 0; i < loose.size(); ++i) {
        BoyId& seat = next[pick[i]];
        if (seat == 0 || inst.girl_prefers(pick[i], loose[i], seat)) seat = loose[i];
      }
      if (next != hold) targets.insert(intern(next));
      size_t i = 0;
      while (i < pick.size() && pick[i] == n) pick[i++] = 1;
      if (i == pick.size()) break;
      ++pick[i];
    }
    out_edges[node].assign(targets.begin(), targets.end());
  }

  dag.reachable_nodes = holds.size();
  for (size_t id = 0; id < holds.size(); ++id) {
    dag.edges += out_edges[id].size();
    bool terminal = true;
    for (int g = 1; g <= n; ++g) terminal &= holds[id][g] != 0;
    if (terminal) ++dag.reachable_terminals;
  }

  std::vector<int> indeg(holds.size(), 0);
  for (const auto& es : out_edges)
    for (int t : es) ++indeg[t];
  std::vector<int> queue;
  for (size_t id = 0; id < holds.size(); ++id)
    if (indeg[id] == 0) queue.push_back((int)id);
  size_t done = 0;
  while (done < queue.size()) {
    int u = queue[done++];
    for (int t : out_edges[u])
      if (--indeg[t] == 0) queue.push_back(t);
  }
  dag.acyclic = done == holds.size();
  return dag;
}

bool verify_schedule_invariance(const Instance& inst,
                                const std::vector<StaticProfile>& profiles,
                                int trials, std::uint64_t seed) {
  Matching reference = run_static(inst, profiles).final;
  std::uint64_t state = seed;
  for (int t = 0; t < trials; ++t)
    if (run_static(inst, profiles, splitmix64(state)).final != reference)
      return false;
  return true;
}

ControlProbe probe_control(const Instance& inst, const ControlQuery& query) {
  ControlProbe probe;
  probe.matching_says = has_control(inst, query).held;

  auto floor_ok = [&](BoyId b, GirlId g) {
    auto it = query.bottoms.find(b);
    return it == query.bottoms.end() ||
           inst.boy_level(b, g) <= inst.boy_level(b, it->second);
  };
  std::map<BoyId, std::vector<GirlId>> adjacency;
  for (BoyId b : query.boys) {
    std::vector<GirlId> girls;
    for (GirlId g : query.girls)
      if (floor_ok(b, g)) girls.push_back(g);
    adjacency.emplace(b, std::move(girls));
  }
  Matching cur = max_bipartite_matching(inst.n, adjacency);
  bool seated_all = true;
  for (GirlId g : query.girls) seated_all &= cur.boy_of[g] != 0;

  auto accepts = [&](GirlId g, BoyId b) {
    BoyId holder = cur.boy_of[g];
    return holder == 0 || inst.girl_prefers(g, b, holder);
  };
  auto in_set = [](const std::set<GirlId>& s, GirlId g) { return s.count(g) > 0; };

  bool broken = !seated_all;
  int fuel = 8 * inst.n * inst.n + 8;  // girls trade up, so this never binds
  while (!broken) {
    BoyId shooter = 0;
    GirlId target = 0;
    for (BoyId e : query.externals) {
      GirlId seat = cur.girl_of[e];
      for (GirlId g : inst.boys[e].flatten()) {
        if (!in_set(query.girls, g) || !accepts(g, e)) continue;
        if (seat == 0 || inst.boy_level(e, g) < inst.boy_level(e, seat)) {
          shooter = e;
          target = g;
        }
        break;  // first hit in his own order is his favourite
      }
      if (shooter) break;
    }
    if (!shooter) {
      probe.replay_says = true;
      for (GirlId g : query.girls)
        probe.replay_says &= query.boys.count(cur.boy_of[g]) > 0;
      break;
    }
    BoyId evicted = cur.boy_of[target];
    cur.couple(shooter, target);
    while (query.boys.count(evicted) > 0) {
      if (--fuel < 0) {
        broken = true;
        break;
      }
      GirlId landing = 0;
      for (GirlId g : inst.boys[evicted].flatten())
        if (in_set(query.girls, g) && floor_ok(evicted, g) && accepts(g, evicted)) {
          landing = g;
          break;
        }
      if (landing == 0) {
        broken = true;  // a held girl is lost for good
        break;
      }
      BoyId bumped = cur.boy_of[landing];
      cur.couple(evicted, landing);
      evicted = bumped;
    }
    if (--fuel < 0) broken = true;
  }
  probe.settled = cur;
  probe.diverged = probe.matching_says != probe.replay_says;
  return probe;
}

}  // namespace smgame
