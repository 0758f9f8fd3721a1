// Trading cycles over a settled matching: boy b points at the holders of
// girls he strictly prefers to his own, and any cycle lets everyone along
// it trade up at once.
#pragma once

#include "smgame/core.hpp"

#include <compare>
#include <vector>

namespace smgame {

struct TradeStep {
  BoyId boy = 0;
  GirlId from_girl = 0;
  GirlId to_girl = 0;
  auto operator<=>(const TradeStep&) const = default;
};

// Closed loop of trades: each boy hands from_girl on and takes to_girl,
// which is the next boy's from_girl.  Canonical form starts at the smallest
// boy id.
using TradingCycle = std::vector<TradeStep>;

// Every elementary cycle of the pointing graph, sorted.  Exponential in the
// worst case; meant for analysis of small markets.
std::vector<TradingCycle> find_trading_cycles(const Instance& inst, const Matching& m);

// Classic rounds: every unsettled boy points at the holder of his favourite
// unsettled girl (his own included, so nobody trades down), cycles in that
// one-out graph trade and settle, repeat.  Cycles of length >= 2 that were
// applied land in *applied when given.
Matching ttc_improve(const Instance& inst, const Matching& m,
                     std::vector<TradingCycle>* applied = nullptr);

}  // namespace smgame
