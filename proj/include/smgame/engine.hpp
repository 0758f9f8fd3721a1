// Sequential proposal engine: one uncoupled boy proposes at a time, girls
// keep the best suitor seen so far and never go back down.  Produces full
// traces (every proposal recorded, refusals included, ids in play order).
#pragma once

#include "smgame/core.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace smgame {

// Strict proposal order for one boy.  May be a prefix of a permutation; a
// boy exhausting his profile while uncoupled is an error at run time.
using StaticProfile = std::vector<GirlId>;

struct PlayElement {
  int id = 0;  // 1-based, assigned in proposal order
  BoyId boy = 0;
  GirlId girl = 0;
  bool accepted = false;
  BoyId displaced = 0;  // boy kicked out by this acceptance, 0 if none
  BoyId victor = 0;     // holder of the girl right after this proposal
};

struct PlayTrace {
  Instance inst;
  std::vector<StaticProfile> profiles;  // what was actually played, slot 0 unused
  bool naive = false;
  std::vector<PlayElement> elements;
  std::vector<int> round_first;  // index into elements where each round starts
  std::vector<BoyId> round_boy;  // the boy whose proposal opened the round
  Matching final;
  // Per girl: rank of her successive partners in her own list, starting from
  // n (vacant).  Never increases; girls only trade up.
  std::vector<std::vector<int>> temperature;

  int proposal_count() const { return (int)elements.size(); }
};

// The boy's own preference order, ties broken by ascending girl id.
std::vector<StaticProfile> naive_profiles(const Instance& inst);

// Boys enter one at a time in ascending id order; an expelled boy continues
// immediately; a round closes when a vacant girl accepts.
PlayTrace run_static(const Instance& inst, std::vector<StaticProfile> profiles);

// Same proposals, but every boy is active from the start and the next
// proposer is drawn by seed.  The final matching does not depend on the
// draw; traces do.
PlayTrace run_static(const Instance& inst, std::vector<StaticProfile> profiles,
                     uint64_t schedule_seed);

PlayTrace run_gale_shapley(const Instance& inst);

// Pairs (b, g) where b's last proposal went to a girl nobody else ever
// proposed to.  She was vacant when he arrived and unchallenged after, so no
// chain of refusals can ever push anyone better her way.
std::vector<std::pair<BoyId, GirlId>> hopeless_pairs(const PlayTrace& trace);

// One line per round: `Round bI: bX->gY | bX->gY(bW) | ...`.  The `(bW)`
// victor annotation appears on refusals; `(id)` suffixes when with_ids.
std::string format_trace(const PlayTrace& trace, bool with_ids = false);

// Canonical form for trace comparison: unicode arrows to `->`, `;` to `|`,
// whitespace and trailing periods dropped, self-victor annotations removed.
std::string normalize_trace_text(const std::string& text);

}  // namespace smgame
