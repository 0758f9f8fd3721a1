#include "smgame/threats.hpp"

#include "smgame/engine.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace smgame {

namespace {

void check_coalition(const Instance& inst, const Coalition& coal) {
  if (coal.members.size() != coal.promise.size())
    throw std::invalid_argument("coalition member without a promised girl");
  std::set<GirlId> taken;
  for (const auto& [b, g] : coal.promise) {
    if (b < 1 || b > inst.n || g < 1 || g > inst.n)
      throw std::invalid_argument("coalition id out of range");
    if (!coal.members.count(b))
      throw std::invalid_argument("promise to a boy outside the coalition");
    if (!taken.insert(g).second)
      throw std::invalid_argument("promise map is not injective");
  }
}

// True when nobody in `externals` outranks b at g.
bool out_of_reach(const Instance& inst, const std::set<BoyId>& externals, BoyId b, GirlId g) {
  for (BoyId e : externals)
    if (inst.girl_prefers(g, e, b)) return false;
  return true;
}

bool augment(BoyId b, const std::map<BoyId, std::vector<GirlId>>& adj,
             std::vector<BoyId>& boy_at, std::vector<char>& seen) {
  for (GirlId g : adj.at(b)) {
    if (seen[g]) continue;
    seen[g] = 1;
    if (boy_at[g] == 0 || augment(boy_at[g], adj, boy_at, seen)) {
      boy_at[g] = b;
      return true;
    }
  }
  return false;
}

// The offer search. `lower` and the admission order are shared down the
// recursion; every failed admission is rolled back before returning, so a
// false result leaves both untouched.
struct WrathSearch {
  const Instance& inst;
  const std::map<BoyId, GirlId>& bottoms;
  std::uint64_t budget;

  std::uint64_t nodes = 0;
  std::vector<GirlId> lower;              // [boy id], 0 = not admitted
  std::vector<BoyId> order;               // admission sequence
  std::vector<std::vector<GirlId>> flat;  // cached flattened lists
  Matching witness;

  enum Step { Yes, No, Out };

  // Girls each admitted boy may hold: his list cut at his floor, and when
  // `safe` also out of reach of everyone not admitted.
  std::map<BoyId, std::vector<GirlId>> placements(const std::set<BoyId>& members, bool safe) const {
    std::set<BoyId> externals;
    if (safe)
      for (BoyId x = 1; x <= inst.n; ++x)
        if (!members.count(x)) externals.insert(x);
    std::map<BoyId, std::vector<GirlId>> adj;
    for (BoyId m : order) {
      int floor_level = inst.boy_level(m, lower[m]);
      std::vector<GirlId> girls;
      for (GirlId g : flat[m]) {
        if (inst.boy_level(m, g) > floor_level) break;
        if (!safe || out_of_reach(inst, externals, m, g)) girls.push_back(g);
      }
      adj.emplace(m, std::move(girls));
    }
    return adj;
  }

  bool covers_all(const Matching& m) const {
    for (BoyId b : order)
      if (!m.girl_of[b]) return false;
    return true;
  }

  Step search(BoyId b, GirlId g) {
    if (++nodes > budget) return Out;
    lower[b] = g;
    order.push_back(b);
    std::set<BoyId> members(order.begin(), order.end());

    auto fail = [&] {
      lower[b] = 0;
      order.pop_back();
      return No;
    };

    // Nobody may be squeezed below his floor, or the offers were empty talk.
    if (!covers_all(max_bipartite_matching(inst.n, placements(members, false)))) return fail();

    // A floor-respecting placement nobody outside can break settles it.
    Matching stable = max_bipartite_matching(inst.n, placements(members, true));
    if (covers_all(stable)) {
      witness = stable;
      return Yes;
    }

    // Recruit outsiders, ascending: offer each the worst girl of the prefix
    // the coalition can pen him out of. An empty prefix means nothing to
    // offer; such a boy is passed over even if he could never do better,
    // which is where false negatives come from.
    for (BoyId b1 = 1; b1 <= inst.n; ++b1) {
      if (members.count(b1)) continue;
      std::vector<GirlId> sx = max_controlled_prefix(inst, members, b1, bottoms);
      if (sx.empty()) continue;
      Step s = search(b1, sx.back());
      if (s != No) return s;
    }
    return fail();
  }
};

FeasibleResult run_wrath(const Instance& inst, const std::map<BoyId, GirlId>& bottoms,
                         BoyId b, GirlId g, std::uint64_t budget) {
  if (b < 1 || b > inst.n || g < 1 || g > inst.n)
    throw std::invalid_argument("feasibility query id out of range");
  WrathSearch ws{inst, bottoms, budget};
  ws.lower.assign(inst.n + 1, 0);
  ws.flat.resize(inst.n + 1);
  for (BoyId x = 1; x <= inst.n; ++x) ws.flat[x] = inst.boys[x].flatten();

  WrathSearch::Step s = ws.search(b, g);
  FeasibleResult res;
  res.nodes = ws.nodes;
  if (s == WrathSearch::Yes) {
    res.verdict = Feasibility::Feasible;
    res.state.order = ws.order;
    for (BoyId m : ws.order) res.state.lower.emplace(m, ws.lower[m]);
    res.outcome = ws.witness;
  } else if (s == WrathSearch::Out) {
    res.verdict = Feasibility::BudgetExceeded;
  }
  return res;
}

}  // namespace

Coalition make_coalition(std::map<BoyId, GirlId> promise) {
  Coalition coal;
  for (const auto& [b, g] : promise) coal.members.insert(b);
  coal.promise = std::move(promise);
  return coal;
}

Matching max_bipartite_matching(int n, const std::map<BoyId, std::vector<GirlId>>& adjacency) {
  for (const auto& [b, girls] : adjacency) {
    if (b < 1 || b > n) throw std::invalid_argument("boy id out of range");
    for (GirlId g : girls)
      if (g < 1 || g > n) throw std::invalid_argument("girl id out of range");
  }
  std::vector<BoyId> boy_at(n + 1, 0);
  std::vector<char> seen(n + 1);
  for (const auto& [b, girls] : adjacency) {
    (void)girls;
    std::fill(seen.begin(), seen.end(), 0);
    augment(b, adjacency, boy_at, seen);
  }
  Matching m(n);
  for (GirlId g = 1; g <= n; ++g)
    if (boy_at[g]) m.couple(boy_at[g], g);
  return m;
}

std::vector<BoyId> direct_vetoers(const Instance& inst, const Coalition& coal) {
  check_coalition(inst, coal);
  std::vector<BoyId> out;
  for (BoyId b = 1; b <= inst.n; ++b) {
    if (coal.members.count(b)) continue;
    for (const auto& [b1, g1] : coal.promise)
      if (inst.girl_prefers(g1, b, b1)) {
        out.push_back(b);
        break;
      }
  }
  return out;
}

std::vector<BoyId> legitimate_vetoers(const Instance& inst, const Coalition& coal,
                                      const Matching* reference) {
  std::vector<BoyId> direct = direct_vetoers(inst, coal);
  Matching gs;
  if (!reference && !direct.empty()) gs = run_gale_shapley(inst).final;
  const Matching& ref = reference ? *reference : gs;
  if (!direct.empty() && ref.n() != inst.n)
    throw std::invalid_argument("reference matching size mismatch");
  std::vector<BoyId> out;
  for (BoyId b : direct) {
    GirlId own = ref.girl_of[b];
    // An uncoupled vetoer gains from any girl who would take him.
    int own_level = own ? inst.boy_level(b, own) : std::numeric_limits<int>::max();
    for (const auto& [b1, g1] : coal.promise)
      if (inst.girl_prefers(g1, b, b1) && inst.boy_level(b, g1) < own_level) {
        out.push_back(b);
        break;
      }
  }
  return out;
}

bool is_externally_stable(const Instance& inst, const Coalition& coal) {
  return direct_vetoers(inst, coal).empty();
}

ControlResult has_control(const Instance& inst, const ControlQuery& q) {
  for (BoyId b : q.boys)
    if (b < 1 || b > inst.n) throw std::invalid_argument("coalition boy out of range");
  for (GirlId g : q.girls)
    if (g < 1 || g > inst.n) throw std::invalid_argument("controlled girl out of range");
  for (BoyId e : q.externals) {
    if (e < 1 || e > inst.n) throw std::invalid_argument("external boy out of range");
    if (q.boys.count(e)) throw std::invalid_argument("external boy inside the coalition");
  }
  for (const auto& [b, g] : q.bottoms)
    if (b < 1 || b > inst.n || g < 1 || g > inst.n)
      throw std::invalid_argument("bottom entry out of range");

  ControlResult res;
  if (q.boys.size() < q.girls.size()) return res;
  std::map<BoyId, std::vector<GirlId>> adj;
  for (BoyId b : q.boys) {
    auto bt = q.bottoms.find(b);
    std::vector<GirlId> girls;
    for (GirlId g : q.girls) {
      if (bt != q.bottoms.end() && inst.boy_level(b, g) > inst.boy_level(b, bt->second)) continue;
      if (!out_of_reach(inst, q.externals, b, g)) continue;
      girls.push_back(g);
    }
    adj.emplace(b, std::move(girls));
  }
  Matching cover = max_bipartite_matching(inst.n, adj);
  for (GirlId g : q.girls)
    if (!cover.boy_of[g]) return res;
  res.held = true;
  res.witness = std::move(cover);
  return res;
}

std::vector<GirlId> max_controlled_prefix(const Instance& inst, const std::set<BoyId>& coalition,
                                          BoyId b1, const std::map<BoyId, GirlId>& bottoms) {
  if (b1 < 1 || b1 > inst.n) throw std::invalid_argument("boy id out of range");
  if (coalition.count(b1)) throw std::invalid_argument("boy is already in the coalition");
  std::vector<GirlId> flat = inst.boys[b1].flatten();
  auto held = [&](int len) {
    ControlQuery q;
    q.boys = coalition;
    q.girls.insert(flat.begin(), flat.begin() + len);
    q.externals = {b1};
    q.bottoms = bottoms;
    return has_control(inst, q).held;
  };
  // Losing a girl never helps the cover, so feasibility of a prefix is
  // monotone in its length.
  int lo = 0, hi = (int)flat.size();
  while (lo < hi) {
    int mid = (lo + hi + 1) / 2;
    if (held(mid))
      lo = mid;
    else
      hi = mid - 1;
  }
  flat.resize(lo);
  return flat;
}

std::optional<Matching> satisfiable_all(const AugmentedInstance& aug) {
  const Instance& inst = aug.inst;
  if ((int)aug.ult.size() != inst.n + 1)
    throw std::invalid_argument("ult not defined for every boy");
  std::map<BoyId, std::vector<GirlId>> adj;
  for (BoyId b = 1; b <= inst.n; ++b) {
    int floor_level = inst.boy_level(b, aug.ult[b]);
    std::vector<GirlId> girls;
    for (GirlId g : inst.boys[b].flatten()) {
      if (inst.boy_level(b, g) > floor_level) break;
      girls.push_back(g);
    }
    adj.emplace(b, std::move(girls));
  }
  Matching m = max_bipartite_matching(inst.n, adj);
  if (!m.complete()) return std::nullopt;
  return m;
}

FeasibleResult is_outcome_feasible(const Instance& inst, BoyId b, GirlId g,
                                   std::uint64_t budget) {
  return run_wrath(inst, {}, b, g, budget);
}

FeasibleResult is_outcome_feasible(const AugmentedInstance& aug, BoyId b, GirlId g,
                                   std::uint64_t budget) {
  std::map<BoyId, GirlId> bottoms;
  for (BoyId x = 1; x <= aug.inst.n; ++x) bottoms.emplace(x, aug.bottom[x]);
  return run_wrath(aug.inst, bottoms, b, g, budget);
}

GameBounds game_bounds(const Instance& inst) {
  GameBounds gb;
  auto n = (std::uint64_t)inst.n;
  auto mul = [&gb](std::uint64_t a, std::uint64_t k) {
    if (k != 0 && a > std::numeric_limits<std::uint64_t>::max() / k) {
      gb.overflow = true;
      return std::numeric_limits<std::uint64_t>::max();
    }
    return a * k;
  };
  gb.outcome_bound = 1;
  for (std::uint64_t k = 2; k <= n; ++k) gb.outcome_bound = mul(gb.outcome_bound, k);
  gb.state_bound = 1;
  for (std::uint64_t k = 0; k < n; ++k) gb.state_bound = mul(gb.state_bound, n + 1);
  gb.proposal_bound = mul(n, n);
  return gb;
}

}  // namespace smgame
