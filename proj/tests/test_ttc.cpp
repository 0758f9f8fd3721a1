#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "smgame/coalition.hpp"
#include "smgame/engine.hpp"
#include "smgame/ttc.hpp"
#include "util.hpp"

#include <set>

using namespace smgame;
using testutil::fx;
using testutil::make_matching;

TEST_CASE("seven-couple market holds exactly one trade") {
  auto inst = parse_instance_file(fx("seven.txt")).inst;
  auto gs = run_gale_shapley(inst).final;
  auto cycles = find_trading_cycles(inst, gs);
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0] == TradingCycle{{3, 3, 2}, {5, 2, 3}});

  std::vector<TradingCycle> applied;
  auto improved = ttc_improve(inst, gs, &applied);
  CHECK(applied == cycles);
  // The b3/b5 swap lands on the same matching the settlement passes reach.
  CHECK(improved == coalition_stable_matching(inst).matching);
  CHECK(find_trading_cycles(inst, improved).empty());
}

TEST_CASE("sparse seven-couple market trades along one of two loops") {
  auto inst = parse_instance_file(fx("seven_sparse.txt")).inst;
  auto gs = run_gale_shapley(inst).final;
  auto cycles = find_trading_cycles(inst, gs);
  REQUIRE(cycles.size() == 2);
  CHECK(cycles[0] == TradingCycle{{3, 3, 5}, {7, 5, 2}, {4, 2, 3}});
  CHECK(cycles[1] == TradingCycle{{3, 3, 5}, {7, 5, 6}, {6, 6, 3}});

  auto improved = ttc_improve(inst, gs);
  CHECK(improved ==
        make_matching(7, {{1, 1}, {2, 7}, {3, 5}, {4, 3}, {5, 4}, {6, 6}, {7, 2}}));
  CHECK(find_trading_cycles(inst, improved).empty());
  CHECK(ttc_improve(inst, improved) == improved);

  // Trading and iterated settlement pull b3 the same way but split on the
  // b4/b6/b7 triangle.
  auto co = coalition_stable_matching(inst).matching;
  std::set<BoyId> differs;
  for (BoyId b = 1; b <= 7; ++b)
    if (improved.girl_of[b] != co.girl_of[b]) differs.insert(b);
  CHECK(differs == std::set<BoyId>{4, 6, 7});
}

TEST_CASE("a collusion-shaped matching trades the liar into first place") {
  auto truth = parse_instance_file(fx("cycle5_true.txt")).inst;
  auto lies = parse_instance_file(fx("cycle5_fals.txt")).inst;

  // Replaying the misreported market yields the position the two schemers
  // wanted on the board.
  auto seeded = run_gale_shapley(lies).final;
  CHECK(seeded == make_matching(5, {{1, 5}, {2, 4}, {3, 2}, {4, 3}, {5, 1}}));

  // Judged by true preferences it is tradeable, including the b2/b5 swap.
  auto cycles = find_trading_cycles(truth, seeded);
  bool has_swap = false;
  for (auto& c : cycles) has_swap |= c == TradingCycle{{2, 4, 1}, {5, 1, 4}};
  CHECK(has_swap);

  auto improved = ttc_improve(truth, seeded);
  CHECK(improved.girl_of[2] == 1);
  CHECK(improved == make_matching(5, {{1, 4}, {2, 1}, {3, 2}, {4, 3}, {5, 5}}));

  // Honest play leaves nothing to trade: only b2 misses his top pick and
  // her holder is already satisfied.
  auto honest = run_gale_shapley(truth).final;
  CHECK(honest == make_matching(5, {{1, 4}, {2, 3}, {3, 1}, {4, 2}, {5, 5}}));
  CHECK(find_trading_cycles(truth, honest).empty());
  CHECK(ttc_improve(truth, honest) == honest);
}

TEST_CASE("identical preferences admit no trades") {
  auto inst = parse_instance_text(
      "boys 3\ngirls 3\n"
      "b 1: 1 2 3\nb 2: 1 2 3\nb 3: 1 2 3\n"
      "g 1: 1 2 3\ng 2: 1 2 3\ng 3: 1 2 3\n").inst;
  auto gs = run_gale_shapley(inst).final;
  CHECK(find_trading_cycles(inst, gs).empty());
  CHECK(ttc_improve(inst, gs) == gs);
}

TEST_CASE("improvement is monotone and exhaustive on random markets") {
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    int n = 2 + (int)(seed % 6);
    auto inst = gen_random(n, seed * 271).inst;
    // Start from an arbitrary matching, not just the engine's.
    uint64_t st = seed * 31 + 7;
    std::vector<GirlId> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i + 1;
    for (int i = n - 1; i >= 1; --i) {
      int j = (int)(splitmix64(st) % (uint64_t)(i + 1));
      std::swap(perm[i], perm[j]);
    }
    Matching m(n);
    for (BoyId b = 1; b <= n; ++b) m.couple(b, perm[b - 1]);

    auto had_cycles = !find_trading_cycles(inst, m).empty();
    auto improved = ttc_improve(inst, m);
    bool someone_moved = false;
    for (BoyId b = 1; b <= n; ++b) {
      CHECK(inst.boy_level(b, improved.girl_of[b]) <= inst.boy_level(b, m.girl_of[b]));
      someone_moved |= improved.girl_of[b] != m.girl_of[b];
    }
    CHECK(someone_moved == had_cycles);
    CHECK(find_trading_cycles(inst, improved).empty());
    CHECK(ttc_improve(inst, improved) == improved);
  }
}
