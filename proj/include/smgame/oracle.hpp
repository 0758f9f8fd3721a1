// Ground truth by brute force, for markets small enough to enumerate:
// every static play, the worst partner a careful boy can be forced down
// to, the full one-shot game graph, and replay probes for claims the fast
// paths take on faith.
#pragma once

#include "smgame/engine.hpp"
#include "smgame/threats.hpp"

#include <cstdint>
#include <vector>

namespace smgame {

// All = every permutation per boy. Conservative = only orders that court
// the whole at-or-above-engine-partner set before anything below it.
enum class ProfileSpace { All, Conservative };

// Finals of run_static across a whole profile space. `outcome_of` maps a
// mixed-radix combination index (boy 1 varies slowest, boy n fastest) to a
// row of `matchings`, the distinct finals sorted by girl_of.
struct OutcomeAtlas {
  std::vector<std::vector<StaticProfile>> profiles;  // [boy id], slot 0 unused
  std::vector<std::uint32_t> outcome_of;             // [combination index]
  std::vector<Matching> matchings;
  std::vector<GirlId> best;   // [boy id] across all finals, ties to low id
  std::vector<GirlId> worst;  // [boy id] likewise
  std::uint64_t combinations() const { return outcome_of.size(); }

  bool operator==(const OutcomeAtlas&) const = default;
};

// Throws std::invalid_argument when inst.n > cap. The plain variant shards
// the plays across threads when OpenMP is enabled; the serial variant is
// the reference both are tested against, byte-identical output.
OutcomeAtlas enumerate_static_outcomes(const Instance& inst, ProfileSpace space,
                                       int cap = 5);
OutcomeAtlas enumerate_static_outcomes_serial(const Instance& inst,
                                              ProfileSpace space, int cap = 5);

// Worst girl b ends up with when he answers every combination of opposing
// conservative profiles with his best conservative reply. Lands on his
// engine partner: playing safe costs nothing, and naive opponents can
// force him all the way down to her.
GirlId worst_case_outcome(const Instance& inst, BoyId b, int cap = 5);

// The one-shot simultaneous game, positions = injective girl-to-holder
// assignments (vacant allowed). Every uncoupled boy picks any girl, each
// girl keeps the best of incumbent and proposers; edges that change
// nothing are dropped, which is what makes the graph acyclic (some girl
// trades strictly up on every real move).
struct GameDag {
  std::uint64_t total_nodes = 0;      // all positions, reachable or not
  std::uint64_t total_terminals = 0;  // positions with every girl held
  std::uint64_t reachable_nodes = 0;  // from the empty position
  std::uint64_t reachable_terminals = 0;
  std::uint64_t edges = 0;  // distinct moves between reachable positions
  bool acyclic = false;

  bool operator==(const GameDag&) const = default;
};

GameDag enumerate_game_dag(const Instance& inst, int cap = 4);

// Runs the canonical schedule once, then `trials` seeded schedules, and
// reports whether every final agreed. Seeds are chained from `seed` by
// splitmix64.
bool verify_schedule_invariance(const Instance& inst,
                                const std::vector<StaticProfile>& profiles,
                                int trials, std::uint64_t seed);

// Empirical cross-check of has_control: seat the coalition by a plain
// cover, then let the externals actually fire their vetoes (lowest id
// first, each at his favourite girl that would take him) while evicted
// members re-seat themselves greedily inside the held set. Survival
// implies a safe cover exists; the converse is not guaranteed, so the two
// answers are reported side by side rather than reconciled.
struct ControlProbe {
  bool matching_says = false;  // has_control verdict
  bool replay_says = false;    // coalition still holds every girl afterwards
  bool diverged = false;
  Matching settled;  // occupancy when the replay stopped
};

ControlProbe probe_control(const Instance& inst, const ControlQuery& query);

}  // namespace smgame
