#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "smgame/engine.hpp"
#include "smgame/threats.hpp"
#include "util.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <vector>

using namespace smgame;
using testutil::fx;
using testutil::make_matching;

namespace {

// Exhaustive maximum matching over an adjacency given as rows; girls are
// marked in `used`. Exponential, for cross-checking only.
int brute_max(const std::vector<std::vector<GirlId>>& rows, size_t i, std::vector<bool>& used) {
  if (i == rows.size()) return 0;
  int best = brute_max(rows, i + 1, used);
  for (GirlId g : rows[i])
    if (!used[g]) {
      used[g] = true;
      best = std::max(best, 1 + brute_max(rows, i + 1, used));
      used[g] = false;
    }
  return best;
}

int matched_pairs(const Matching& m) {
  int c = 0;
  for (int b = 1; b <= m.n(); ++b)
    if (m.girl_of[b]) ++c;
  return c;
}

Coalition coalition_of(const Matching& m, const std::vector<BoyId>& members) {
  std::map<BoyId, GirlId> promise;
  for (BoyId b : members) promise.emplace(b, m.girl_of[b]);
  return make_coalition(promise);
}

}  // namespace

TEST_CASE("augmenting paths reach the exhaustive maximum") {
  std::map<BoyId, std::vector<GirlId>> complete;
  for (BoyId b = 1; b <= 3; ++b) complete[b] = {1, 2, 3};
  CHECK(matched_pairs(max_bipartite_matching(3, complete)) == 3);

  std::map<BoyId, std::vector<GirlId>> star;
  for (BoyId b = 1; b <= 3; ++b) star[b] = {1};
  auto m = max_bipartite_matching(3, star);
  CHECK(matched_pairs(m) == 1);
  CHECK(m.boy_of[1] == 1);  // first boy in wins, deterministically

  uint64_t rng = 2026;
  for (int trial = 0; trial < 40; ++trial) {
    std::map<BoyId, std::vector<GirlId>> adj;
    std::vector<std::vector<GirlId>> rows(6);
    for (BoyId b = 1; b <= 6; ++b) {
      for (GirlId g = 1; g <= 6; ++g)
        if (splitmix64(rng) % 3 == 0) rows[b - 1].push_back(g);
      adj[b] = rows[b - 1];
    }
    std::vector<bool> used(7, false);
    CHECK(matched_pairs(max_bipartite_matching(6, adj)) == brute_max(rows, 0, used));
    CHECK(max_bipartite_matching(6, adj) == max_bipartite_matching(6, adj));
  }

  CHECK_THROWS_AS(max_bipartite_matching(3, {{4, {1}}}), std::invalid_argument);
  CHECK_THROWS_AS(max_bipartite_matching(3, {{1, {9}}}), std::invalid_argument);
}

TEST_CASE("outsiders a promised girl would take are the vetoers") {
  auto inst = parse_instance_file(fx("seven_sparse.txt")).inst;

  // The cycle-traded pact: its three girls would each take someone outside.
  auto traded = make_coalition({{3, 5}, {4, 3}, {7, 2}});
  CHECK(direct_vetoers(inst, traded) == std::vector<BoyId>{2, 5, 6});
  CHECK_FALSE(is_externally_stable(inst, traded));

  // With every boy inside there is nobody left to object.
  auto settled = coalition_of(
      make_matching(7, {{1, 1}, {2, 7}, {3, 5}, {4, 2}, {5, 4}, {6, 3}, {7, 6}}),
      {1, 2, 3, 4, 5, 6, 7});
  CHECK(direct_vetoers(inst, settled).empty());
  CHECK(is_externally_stable(inst, settled));

  // g2 ranks b4 first, so promising her to him leaves nothing to veto.
  CHECK(direct_vetoers(inst, make_coalition({{4, 2}})).empty());

  CHECK(direct_vetoers(inst, make_coalition({{3, 5}, {4, 3}})) ==
        std::vector<BoyId>{2, 5, 6, 7});

  CHECK_THROWS_AS(direct_vetoers(inst, make_coalition({{3, 5}, {4, 5}})),
                  std::invalid_argument);
  Coalition ragged;
  ragged.members = {3, 4};
  ragged.promise = {{3, 5}};
  CHECK_THROWS_AS(direct_vetoers(inst, ragged), std::invalid_argument);
}

TEST_CASE("a veto only counts as worth it above one's own girl") {
  auto inst = parse_instance_file(fx("seven_sparse.txt")).inst;
  auto traded = make_coalition({{3, 5}, {4, 3}, {7, 2}});

  // Against the engine outcome all three vetoers would trade up.
  CHECK(legitimate_vetoers(inst, traded) == std::vector<BoyId>{2, 5, 6});

  // Hand b6 his first choice in the reference and his veto stops paying.
  auto swapped = make_matching(
      7, {{1, 1}, {2, 7}, {3, 6}, {4, 2}, {5, 4}, {6, 3}, {7, 5}});
  CHECK(legitimate_vetoers(inst, traded, &swapped) == std::vector<BoyId>{2, 5});

  // A reference putting every vetoer on his first choice defuses them all.
  auto wide = make_coalition({{3, 5}, {4, 3}});
  Matching tops(7);
  tops.girl_of[2] = 2;
  tops.girl_of[5] = 3;
  tops.girl_of[6] = 3;
  tops.girl_of[7] = 2;
  CHECK(legitimate_vetoers(inst, wide, &tops).empty());

  auto full = coalition_of(
      make_matching(7, {{1, 1}, {2, 7}, {3, 5}, {4, 2}, {5, 4}, {6, 3}, {7, 6}}),
      {1, 2, 3, 4, 5, 6, 7});
  CHECK(legitimate_vetoers(inst, full).empty());
}

TEST_CASE("nine boys pen the lone rival away from all but his fourth girl") {
  auto inst = parse_instance_file(fx("threats10.txt")).inst;

  ControlQuery q;
  for (BoyId b = 2; b <= 10; ++b) q.boys.insert(b);
  for (GirlId g = 1; g <= 10; ++g)
    if (g != 8) q.girls.insert(g);
  q.externals = {1};
  auto res = has_control(inst, q);
  REQUIRE(res.held);
  // Only one boy outranks the rival at each of these girls.
  CHECK(res.witness.boy_of[1] == 2);
  CHECK(res.witness.boy_of[3] == 5);
  CHECK(res.witness.boy_of[6] == 7);
  for (GirlId g : q.girls) {
    BoyId cover = res.witness.boy_of[g];
    REQUIRE(cover != 0);
    CHECK(q.boys.count(cover) == 1);
    CHECK_FALSE(inst.girl_prefers(g, 1, cover));
  }

  // One boy cannot hold two girls.
  ControlQuery alone;
  alone.boys = {4};
  alone.girls = {4, 10};
  for (BoyId b = 1; b <= 10; ++b)
    if (b != 4) alone.externals.insert(b);
  CHECK_FALSE(has_control(inst, alone).held);

  ControlQuery everyone;
  for (int i = 1; i <= 10; ++i) {
    everyone.boys.insert(i);
    everyone.girls.insert(i);
  }
  auto all = has_control(inst, everyone);
  CHECK(all.held);
  CHECK(all.witness.complete());

  ControlQuery overlapping = everyone;
  overlapping.externals = {3};
  CHECK_THROWS_AS(has_control(inst, overlapping), std::invalid_argument);
}

TEST_CASE("the seven-boy pact holds its girls and nobody can break in") {
  auto inst = parse_instance_file(fx("threats10.txt")).inst;
  ControlQuery q;
  for (BoyId b = 1; b <= 10; ++b)
    if (b != 4 && b != 9 && b != 10) q.boys.insert(b);
  q.girls = {1, 2, 3, 5, 6, 7, 8};
  q.externals = {4, 9, 10};
  auto res = has_control(inst, q);
  REQUIRE(res.held);
  // The cover is exactly where the threat play leaves these seven boys.
  CHECK(res.witness == make_matching(10, {{1, 8}, {2, 1}, {3, 2}, {5, 3}, {6, 5}, {7, 6}, {8, 7}}));
  CHECK(is_externally_stable(inst, coalition_of(res.witness, {1, 2, 3, 5, 6, 7, 8})));
}

TEST_CASE("the holdable prefix grows with the coalition") {
  auto inst = parse_instance_file(fx("threats10.txt")).inst;

  CHECK(max_controlled_prefix(inst, {}, 1).empty());

  std::set<BoyId> others;
  for (BoyId b = 2; b <= 10; ++b) others.insert(b);
  CHECK(max_controlled_prefix(inst, others, 1) == std::vector<GirlId>{1, 3, 6});

  // A boy his own top girl ranks first can never be penned out of her.
  auto tiny = parse_instance_text(
                  "boys 2\ngirls 2\nb 1: 1 2\nb 2: 1 2\ng 1: 1 2\ng 2: 1 2\n")
                  .inst;
  CHECK(max_controlled_prefix(tiny, {2}, 1).empty());

  CHECK_THROWS_AS(max_controlled_prefix(inst, others, 2), std::invalid_argument);

  uint64_t rng = 71;
  for (int trial = 0; trial < 20; ++trial) {
    auto market = gen_random(6, splitmix64(rng)).inst;
    BoyId b1 = 1 + (BoyId)(splitmix64(rng) % 6);
    std::set<BoyId> small, big;
    for (BoyId b = 1; b <= 6; ++b) {
      if (b == b1) continue;
      if (splitmix64(rng) % 2) small.insert(b);
      big.insert(b);
    }
    auto sx_small = max_controlled_prefix(market, small, b1);
    auto sx_big = max_controlled_prefix(market, big, b1);
    REQUIRE(sx_small.size() <= sx_big.size());
    CHECK(std::equal(sx_small.begin(), sx_small.end(), sx_big.begin()));
  }
}

TEST_CASE("control without rivals is plain coverage") {
  uint64_t rng = 404;
  for (int trial = 0; trial < 25; ++trial) {
    auto inst = gen_random(5, splitmix64(rng)).inst;
    ControlQuery q;
    std::vector<std::vector<GirlId>> rows;
    for (BoyId b = 1; b <= 5; ++b)
      if (splitmix64(rng) % 3) q.boys.insert(b);
    for (GirlId g = 1; g <= 5; ++g)
      if (splitmix64(rng) % 3 == 0) q.girls.insert(g);
    for (BoyId b : q.boys)
      q.bottoms.emplace(b, inst.boys[b].flatten()[splitmix64(rng) % 5]);
    for (BoyId b : q.boys) {
      rows.emplace_back();
      for (GirlId g : q.girls)
        if (inst.boy_level(b, g) <= inst.boy_level(b, q.bottoms.at(b)))
          rows.back().push_back(g);
    }
    std::vector<bool> used(6, false);
    bool coverable = q.boys.size() >= q.girls.size() &&
                     brute_max(rows, 0, used) == (int)q.girls.size();
    auto res = has_control(inst, q);
    CHECK(res.held == coverable);
    if (res.held)
      for (GirlId g : q.girls)
        CHECK(inst.boy_level(res.witness.boy_of[g], g) <=
              inst.boy_level(res.witness.boy_of[g], q.bottoms.at(res.witness.boy_of[g])));
  }
}

TEST_CASE("everyone above his ultimatum or no deal at all") {
  auto inst = parse_instance_file(fx("threats10.txt")).inst;
  auto aug = default_augmented(inst);

  aug.ult[1] = 1;
  aug.ult[4] = 1;
  CHECK_FALSE(satisfiable_all(aug).has_value());

  aug.ult[4] = 10;
  auto m = satisfiable_all(aug);
  REQUIRE(m.has_value());
  CHECK(m->complete());
  CHECK(m->girl_of[1] == 1);
  CHECK(m->girl_of[4] == 10);
  for (BoyId b = 1; b <= 10; ++b)
    CHECK(inst.boy_level(b, m->girl_of[b]) <= inst.boy_level(b, aug.ult[b]));

  CHECK(satisfiable_all(default_augmented(inst)).has_value());

  uint64_t rng = 11;
  for (int trial = 0; trial < 20; ++trial) {
    auto market = gen_random(4, splitmix64(rng)).inst;
    auto a = default_augmented(market);
    for (BoyId b = 1; b <= 4; ++b)
      a.ult[b] = market.boys[b].flatten()[splitmix64(rng) % 4];
    auto got = satisfiable_all(a);
    bool exists = false;
    std::vector<int> perm{1, 2, 3, 4};
    do {
      bool ok = true;
      for (BoyId b = 1; b <= 4; ++b)
        ok &= market.boy_level(b, perm[b - 1]) <= market.boy_level(b, a.ult[b]);
      exists |= ok;
    } while (std::next_permutation(perm.begin(), perm.end()));
    REQUIRE(got.has_value() == exists);
    if (got)
      for (BoyId b = 1; b <= 4; ++b)
        CHECK(market.boy_level(b, got->girl_of[b]) <= market.boy_level(b, a.ult[b]));
  }
}

TEST_CASE("a chain of offers locks the alliance onto its target") {
  auto inst = parse_instance_file(fx("threats10.txt")).inst;
  auto res = is_outcome_feasible(inst, 4, 1);
  REQUIRE(res.verdict == Feasibility::Feasible);
  CHECK(res.state.order ==
        std::vector<BoyId>{4, 2, 5, 1, 6, 7, 8, 9, 3, 10});
  CHECK(res.state.lower ==
        std::map<BoyId, GirlId>{{1, 3}, {2, 2}, {3, 9}, {4, 1}, {5, 5}, {6, 6}, {7, 7}, {8, 8}, {9, 10}, {10, 4}});
  // The witness is the cooperative outcome: everybody sits exactly on the
  // floor he was promised when recruited.
  CHECK(res.outcome == make_matching(10, {{1, 3}, {2, 2}, {3, 9}, {4, 1}, {5, 5}, {6, 6}, {7, 7}, {8, 8}, {9, 10}, {10, 4}}));
  CHECK(res.nodes == 15);
  std::vector<BoyId> all{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  CHECK(is_externally_stable(inst, coalition_of(res.outcome, all)));
}

TEST_CASE("the search reports not found, never impossible") {
  auto inst = parse_instance_file(fx("threats10.txt")).inst;
  auto res = is_outcome_feasible(inst, 1, 1);
  CHECK(res.verdict == Feasibility::NotFound);
  CHECK(res.state.order.empty());
  CHECK(res.state.lower.empty());

  // Identical lists: the second boy cannot even keep his own engine girl,
  // because the first boy is nothing but a rival and has no reason to join.
  auto twin = parse_instance_text(
                  "boys 2\ngirls 2\nb 1: 1 2\nb 2: 1 2\ng 1: 1 2\ng 2: 1 2\n")
                  .inst;
  CHECK(run_gale_shapley(twin).final == make_matching(2, {{1, 1}, {2, 2}}));
  CHECK(is_outcome_feasible(twin, 2, 2).verdict == Feasibility::NotFound);

  auto top = is_outcome_feasible(twin, 1, 1);
  REQUIRE(top.verdict == Feasibility::Feasible);
  CHECK(top.state.order == std::vector<BoyId>{1});
  CHECK(top.outcome == make_matching(2, {{1, 1}}));
}

TEST_CASE("the node budget cuts the search off distinctly") {
  auto inst = parse_instance_file(fx("threats10.txt")).inst;
  CHECK(is_outcome_feasible(inst, 4, 1, 15).verdict == Feasibility::Feasible);
  auto cut = is_outcome_feasible(inst, 4, 1, 14);
  CHECK(cut.verdict == Feasibility::BudgetExceeded);
  CHECK(cut.nodes == 15);
  CHECK(is_outcome_feasible(inst, 4, 1, 0).verdict == Feasibility::BudgetExceeded);
}

TEST_CASE("floors thread into what the coalition can offer recruits") {
  auto inst = parse_instance_file(fx("threats10.txt")).inst;
  auto aug = default_augmented(inst);
  auto plain = is_outcome_feasible(inst, 4, 1);
  auto dflt = is_outcome_feasible(aug, 4, 1);
  CHECK(dflt.verdict == Feasibility::Feasible);
  CHECK(dflt.state.order == plain.state.order);
  CHECK(dflt.outcome == plain.outcome);

  // If b4 may never cover below his own top girl, he has nothing to pen
  // anyone out of, no recruit ever joins, and the chain never starts.
  aug.bottom[4] = 1;
  CHECK(is_outcome_feasible(aug, 4, 1).verdict == Feasibility::NotFound);
}

TEST_CASE("witnesses are sound wherever the search succeeds") {
  uint64_t rng = 909;
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + (int)(splitmix64(rng) % 5);
    auto inst = gen_random(n, splitmix64(rng)).inst;
    auto gs = run_gale_shapley(inst).final;
    BoyId b = 1 + (BoyId)(splitmix64(rng) % n);
    for (GirlId g : {gs.girl_of[b], inst.boys[b].flatten()[0]}) {
      auto res = is_outcome_feasible(inst, b, g);
      REQUIRE(res.verdict != Feasibility::BudgetExceeded);
      if (res.verdict != Feasibility::Feasible) continue;
      REQUIRE_FALSE(res.state.order.empty());
      CHECK(res.state.order.front() == b);
      CHECK(inst.boy_level(b, res.outcome.girl_of[b]) <= inst.boy_level(b, g));
      std::set<BoyId> admitted(res.state.order.begin(), res.state.order.end());
      REQUIRE(admitted.size() == res.state.order.size());
      for (BoyId x = 1; x <= n; ++x)
        CHECK((res.outcome.girl_of[x] != 0) == (admitted.count(x) == 1));
      for (BoyId x : res.state.order)
        CHECK(inst.boy_level(x, res.outcome.girl_of[x]) <=
              inst.boy_level(x, res.state.lower.at(x)));
      CHECK(is_externally_stable(inst, coalition_of(res.outcome, res.state.order)));
    }
  }
}

TEST_CASE("size bounds saturate instead of wrapping") {
  auto b3 = game_bounds(gen_random(3, 5).inst);
  CHECK(b3 == GameBounds{6, 64, 9, false});
  CHECK(game_bounds(gen_random(1, 5).inst) == GameBounds{1, 2, 1, false});

  auto b10 = game_bounds(parse_instance_file(fx("threats10.txt")).inst);
  CHECK(b10.outcome_bound == 3628800);
  CHECK(b10.state_bound == 25937424601ull);
  CHECK(b10.proposal_bound == 100);
  CHECK_FALSE(b10.overflow);

  auto big = game_bounds(gen_random(21, 5).inst);
  CHECK(big.overflow);
  CHECK(big.outcome_bound == std::numeric_limits<std::uint64_t>::max());
  CHECK(big.proposal_bound == 441);
}
