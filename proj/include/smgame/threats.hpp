// Coalition analysis: which outsiders can wreck a promised matching, which
// girl sets a group of boys can hold against named rivals, and a
// backtracking search for a chain of offers that locks one boy onto a girl
// he could not take alone. Everything rests on a small maximum-matching
// core.
#pragma once

#include "smgame/core.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace smgame {

// A pact: each member promises to court his assigned girl and stay put.
struct Coalition {
  std::set<BoyId> members;
  std::map<BoyId, GirlId> promise;  // defined exactly on members, injective

  bool operator==(const Coalition&) const = default;
};

// members = keys of the promise map.
Coalition make_coalition(std::map<BoyId, GirlId> promise);

// Maximum-cardinality matching by augmenting paths. Boys are tried in
// ascending id order, each boy's girls in the order listed, so the result
// is deterministic for a fixed input.
Matching max_bipartite_matching(int n, const std::map<BoyId, std::vector<GirlId>>& adjacency);

// Outsiders who could break the pact: every boy not in the coalition whom
// some promised girl prefers over the member she is promised to. Ascending.
std::vector<BoyId> direct_vetoers(const Instance& inst, const Coalition& coal);

// Vetoers who would actually gain: the girl that would take them ranks
// above their own girl in `reference` (engine outcome when omitted).
std::vector<BoyId> legitimate_vetoers(const Instance& inst, const Coalition& coal,
                                      const Matching* reference = nullptr);

bool is_externally_stable(const Instance& inst, const Coalition& coal);

// Can `boys` keep every girl in `girls` out of the externals' reach?
struct ControlQuery {
  std::set<BoyId> boys;
  std::set<GirlId> girls;
  std::set<BoyId> externals;        // disjoint from boys
  std::map<BoyId, GirlId> bottoms;  // optional floor per covering boy
};

struct ControlResult {
  bool held = false;
  Matching witness;  // worst-case cover of the girls; meaningful when held
};

// True iff the girls can be perfectly covered by distinct coalition boys
// such that no external outranks the covering boy at his girl and, where a
// bottom is given, the girl sits at or above it in the boy's list. Fewer
// boys than girls is an automatic no.
ControlResult has_control(const Instance& inst, const ControlQuery& q);

// Longest prefix of b1's flattened list the coalition can hold against b1
// alone, in b1's preference order. Monotone in the coalition, so found by
// binary search on the prefix length.
std::vector<GirlId> max_controlled_prefix(const Instance& inst, const std::set<BoyId>& coalition,
                                          BoyId b1,
                                          const std::map<BoyId, GirlId>& bottoms = {});

// A matching giving every boy his ult girl or better, when one exists.
std::optional<Matching> satisfiable_all(const AugmentedInstance& aug);

// Running state of the offer search: the floor each admitted boy has been
// promised, and the order the coalition grew in.
struct WrathState {
  std::map<BoyId, GirlId> lower;  // present iff the boy was admitted
  std::vector<BoyId> order;

  bool operator==(const WrathState&) const = default;
};

enum class Feasibility { Feasible, NotFound, BudgetExceeded };

struct FeasibleResult {
  Feasibility verdict = Feasibility::NotFound;
  WrathState state;       // final coalition when feasible
  Matching outcome;       // externally stable witness honouring every floor
  std::uint64_t nodes = 0;
};

// Backtracking search for a coalition that guarantees b girl g or better.
// Starting from {b} with floor g, it repeatedly checks whether the admitted
// boys can all be placed at or above their floors (give up if not), whether
// such a placement is already safe from everyone outside (done if so), and
// otherwise tries to recruit each outsider, ascending, by offering the
// worst girl of the prefix the current coalition can pen him out of;
// outsiders with an empty such prefix are passed over, a documented source
// of false negatives. NotFound therefore never means impossible. Each call
// costs one node against the budget.
FeasibleResult is_outcome_feasible(const Instance& inst, BoyId b, GirlId g,
                                   std::uint64_t budget = 1'000'000);
// Same search, but coverage edges also respect each covering boy's bottom.
FeasibleResult is_outcome_feasible(const AugmentedInstance& aug, BoyId b, GirlId g,
                                   std::uint64_t budget = 1'000'000);

// Closed-form size bounds for a market of n boys: distinct complete
// outcomes (n!), girl-to-holder assignments ((n+1)^n), and the proposal
// count any single play can reach (n^2). Saturates at uint64 max.
struct GameBounds {
  std::uint64_t outcome_bound = 0;
  std::uint64_t state_bound = 0;
  std::uint64_t proposal_bound = 0;
  bool overflow = false;

  bool operator==(const GameBounds&) const = default;
};

GameBounds game_bounds(const Instance& inst);

}  // namespace smgame
