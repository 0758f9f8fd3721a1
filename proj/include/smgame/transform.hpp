// Market rewrites that reduce richer settings to the plain square model:
// boys who only know some of the girls, girls with several slots, and girls
// who want the power to reject suitors outright.
#pragma once

#include "smgame/core.hpp"

#include <map>
#include <set>

namespace smgame {

// Rewrites a market where each boy is only aware of some girls. A boy keeps
// his known girls in order, all fictitious girls come next, and the unknown
// real girls trail last, so play never reaches them while a fictitious girl
// is free. Boys missing from `known` are fully aware. Enough fictitious
// girls are added to cover the worst-informed boy; fictitious boys square
// the market and sit at the bottom of every girl's list.
Instance pad_fictitious(const Instance& inst,
                        const std::map<BoyId, std::set<GirlId>>& known);

struct SlotExpansion {
  Instance inst;
  std::vector<GirlId> parent;  // [expanded girl id] -> original girl id

  // Original-girl assignment per boy under m; 0 = unmatched.
  std::vector<GirlId> project(const Matching& m) const;
};

// One girl per capacity slot. The slots sit adjacent where the parent girl
// stood (inside her tie-group if she had one) and copy her list verbatim.
// Capacities above the boy count are clamped; girls absent from `slots`
// keep a single slot.
SlotExpansion expand_slots(const Instance& inst,
                           const std::map<GirlId, int>& slots);

// Gives every girl g a devoted suitor b' whose list is g, then his own dump
// girl, then everything else. By default each b' is appended to every list,
// which leaves play on the real participants unchanged. `placement[g]` moves
// g's own b' to that 1-based position in her list; everyone she ranks below
// him is then effectively rejected, at the price of staying unmatched when
// nobody above him shows up.
Instance add_rejector_boys(const Instance& inst,
                           const std::map<GirlId, int>& placement = {});

}  // namespace smgame
