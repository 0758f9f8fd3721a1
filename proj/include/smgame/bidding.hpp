// Deferred acceptance with money: proposals carry quotes, girls judge
// (boy, quote) pairs, and a quote, once made, can only ever go down.  A
// lone suitor quotes the girl's full budget; a challenge drops every
// contender to his reserve and she keeps the best scorer.
#pragma once

#include "smgame/core.hpp"

#include <cstdint>
#include <vector>

namespace smgame {

// Girls' own preference lists are carried along but never consulted here;
// the extension's quality scores replace them.
struct BidInstance {
  Instance base;
  BidExtension ext;

  bool operator==(const BidInstance&) const = default;
};

// Stitches a parsed file into a runnable market, with an all-zero
// extension when the file declared none.
BidInstance make_bid_instance(const ParsedFile& pf);

enum class BidEventKind {
  Proposal,  // a boy arrives with a quote
  Requote,   // a challenged incumbent reveals his reserve
};

struct BidEvent {
  int id = 0;  // 1-based, in table order
  BidEventKind kind = BidEventKind::Proposal;
  BoyId boy = 0;
  GirlId girl = 0;
  std::int64_t quote = 0;
  bool contested = false;  // the girl was already held when this fired
  bool holds = false;      // the boy holds her once the dust settles
  BoyId displaced = 0;

  bool operator==(const BidEvent&) const = default;
};

struct BidTrace {
  BidInstance market;
  std::vector<BidEvent> events;
  Matching final;
  // Standing quote of each boy for the girl he ends up with; -1 while
  // unmatched (never in a finished trace of a square market).
  std::vector<std::int64_t> final_quote;
};

// Sequential engine over the boys' own lists.  A vacant girl takes any
// proposal at her full budget; a contest is scored by
// quality - lambda * quote, ties to higher quality, then lower id.  The
// loser walks on down his list and never returns.  With every lambda
// zero the final matching is exactly Gale-Shapley on quality-ordered
// girl lists.  Throws std::invalid_argument on a malformed extension or
// a reserve above the girl's budget.
BidTrace run_bidding_gs(const BidInstance& market);

}  // namespace smgame
