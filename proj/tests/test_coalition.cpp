#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "smgame/coalition.hpp"
#include "util.hpp"

#include <set>

using namespace smgame;
using testutil::fx;
using testutil::make_matching;

namespace {

using PairSet = std::set<std::pair<BoyId, GirlId>>;

PairSet fixed_set(const CoalitionIteration& it) {
  return PairSet(it.fixed.begin(), it.fixed.end());
}

}  // namespace

TEST_CASE("sparse seven-couple market settles in three passes") {
  auto inst = parse_instance_file(fx("seven_sparse.txt")).inst;
  auto res = coalition_stable_matching(inst);
  CHECK(res.matching ==
        make_matching(7, {{1, 1}, {2, 7}, {3, 5}, {4, 2}, {5, 4}, {6, 3}, {7, 6}}));
  // b7's failed run at g2 counts as a challenge, so b4 settles a pass later
  // than a final-matching-only reading would suggest.
  REQUIRE(res.iterations.size() == 4);
  CHECK(fixed_set(res.iterations[0]) == PairSet{{1, 1}, {2, 7}, {5, 4}});
  CHECK(fixed_set(res.iterations[1]) == PairSet{{3, 5}, {7, 6}});
  CHECK(fixed_set(res.iterations[2]) == PairSet{{4, 2}});
  CHECK(fixed_set(res.iterations[3]) == PairSet{{6, 3}});
  CHECK(res.iterations[3].survivors == std::vector<BoyId>{6});
  for (BoyId b = 1; b <= 7; ++b) CHECK(res.opt.at(b) == res.matching.girl_of[b]);
}

TEST_CASE("seven-couple market trades up from the engine outcome") {
  auto inst = parse_instance_file(fx("seven.txt")).inst;
  auto res = coalition_stable_matching(inst);
  CHECK(res.matching ==
        make_matching(7, {{1, 1}, {2, 4}, {3, 2}, {4, 5}, {5, 3}, {6, 6}, {7, 7}}));
  REQUIRE(res.iterations.size() == 4);
  CHECK(fixed_set(res.iterations[0]) == PairSet{{4, 5}});
  CHECK(fixed_set(res.iterations[1]) == PairSet{{1, 1}, {6, 6}, {7, 7}});
  CHECK(fixed_set(res.iterations[2]) == PairSet{{2, 4}});
  CHECK(fixed_set(res.iterations[3]) == PairSet{{3, 2}, {5, 3}});

  // The settled matching may leave a boy and girl who fancy each other over
  // their partners; that is the accepted price of the group trade.
  auto bp = blocking_pairs(inst, res.matching);
  bool found = false;
  for (auto& p : bp) found |= p.boy == 2 && p.girl == 2;
  CHECK(found);
}

TEST_CASE("a shortened list can buy a better settled girl") {
  auto truth = coalition_stable_matching(parse_instance_file(fx("liar6_true.txt")).inst);
  CHECK(truth.matching ==
        make_matching(6, {{1, 1}, {2, 5}, {3, 4}, {4, 2}, {5, 3}, {6, 6}}));
  auto lied = coalition_stable_matching(parse_instance_file(fx("liar6_fals.txt")).inst);
  CHECK(lied.matching ==
        make_matching(6, {{1, 1}, {2, 5}, {3, 2}, {4, 4}, {5, 3}, {6, 6}}));
  // External b2 climbs from his second pick (g3) to his first (g1).
}

TEST_CASE("deviation scenarios settle to their printed outcomes") {
  auto both = coalition_stable_matching(parse_instance_file(fx("deviate6_both.txt")).inst);
  CHECK(both.matching ==
        make_matching(6, {{1, 5}, {2, 6}, {3, 2}, {4, 4}, {5, 1}, {6, 3}}));
  REQUIRE(both.iterations.size() == 5);
  CHECK(fixed_set(both.iterations[0]) == PairSet{{4, 4}});
  CHECK(fixed_set(both.iterations[1]) == PairSet{{3, 2}, {5, 1}});
  CHECK(fixed_set(both.iterations[2]) == PairSet{{6, 3}});
  CHECK(fixed_set(both.iterations[3]) == PairSet{{2, 6}});
  CHECK(fixed_set(both.iterations[4]) == PairSet{{1, 5}});

  auto b2only = coalition_stable_matching(parse_instance_file(fx("deviate6_b2.txt")).inst);
  CHECK(b2only.matching ==
        make_matching(6, {{1, 5}, {2, 6}, {3, 4}, {4, 2}, {5, 3}, {6, 1}}));
  REQUIRE(b2only.iterations.size() == 4);
  CHECK(fixed_set(b2only.iterations[0]) == PairSet{{3, 4}});
  CHECK(fixed_set(b2only.iterations[1]) == PairSet{{4, 2}, {6, 1}});
  CHECK(fixed_set(b2only.iterations[2]) == PairSet{{2, 6}, {5, 3}});
  CHECK(fixed_set(b2only.iterations[3]) == PairSet{{1, 5}});

  auto neither = coalition_stable_matching(parse_instance_file(fx("deviate6_true.txt")).inst);
  CHECK(neither.matching == b2only.matching);
  REQUIRE(neither.iterations.size() == 3);
  CHECK(fixed_set(neither.iterations[0]) == PairSet{{3, 4}, {6, 1}});
  CHECK(fixed_set(neither.iterations[1]) == PairSet{{2, 6}, {4, 2}, {5, 3}});
  CHECK(fixed_set(neither.iterations[2]) == PairSet{{1, 5}});
}

TEST_CASE("settled girls are never worse than engine girls") {
  auto d31 = compare_with_gs(parse_instance_file(fx("seven_sparse.txt")).inst);
  CHECK(d31 == std::vector<int>{0, 0, 0, -1, 0, 0, -1, -1});

  for (uint64_t seed = 1; seed <= 40; ++seed) {
    int n = 2 + (int)(seed % 5);
    auto inst = gen_random(n, seed * 7919).inst;
    auto delta = compare_with_gs(inst);
    for (BoyId b = 1; b <= n; ++b) CHECK(delta[b] <= 0);

    auto res = coalition_stable_matching(inst);
    CHECK(res.matching.complete());
    CHECK((int)res.iterations.size() <= n);
    // Every pass settles someone, and the passes partition the boys.
    std::set<BoyId> seen;
    for (auto& it : res.iterations) {
      CHECK(!it.fixed.empty());
      for (auto [b, g] : it.fixed) CHECK(seen.insert(b).second);
    }
    CHECK((int)seen.size() == n);
    // Determinism.
    CHECK(coalition_stable_matching(inst).matching == res.matching);
  }
}

TEST_CASE("identical preferences leave nothing to trade") {
  auto pf = parse_instance_text(
      "boys 3\ngirls 3\n"
      "b 1: 1 2 3\nb 2: 1 2 3\nb 3: 1 2 3\n"
      "g 1: 1 2 3\ng 2: 1 2 3\ng 3: 1 2 3\n");
  auto delta = compare_with_gs(pf.inst);
  CHECK(delta == std::vector<int>{0, 0, 0, 0});
  CHECK(coalition_stable_matching(pf.inst).matching == run_gale_shapley(pf.inst).final);
}
