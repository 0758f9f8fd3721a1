#include "smgame/bidding.hpp"

#include <stdexcept>

namespace smgame {

namespace {

void check_market(const BidInstance& market) {
  const int n = market.base.n;
  const BidExtension& ext = market.ext;
  if ((int)ext.budget.size() != n + 1 || (int)ext.lambda.size() != n + 1 ||
      (int)ext.reserve.size() != n + 1 || (int)ext.quality.size() != n + 1)
    throw std::invalid_argument("extension tables do not match the market size");
  for (GirlId g = 1; g <= n; ++g) {
    if ((int)ext.quality[g].size() != n + 1)
      throw std::invalid_argument("quality table does not match the market size");
    if (ext.lambda[g] < 0) throw std::invalid_argument("lambda must be non-negative");
  }
  for (BoyId b = 1; b <= n; ++b) {
    if ((int)ext.reserve[b].size() != n + 1)
      throw std::invalid_argument("reserve table does not match the market size");
    for (GirlId g = 1; g <= n; ++g)
      if (ext.reserve[b][g] > ext.budget[g])
        throw std::invalid_argument("reserve exceeds girl's budget");
  }
}

}  // namespace

BidInstance make_bid_instance(const ParsedFile& pf) {
  BidInstance market;
  market.base = pf.inst;
  if (pf.bid) {
    market.ext = *pf.bid;
  } else {
    const int n = pf.inst.n;
    market.ext.budget.assign(n + 1, 0);
    market.ext.lambda.assign(n + 1, 0);
    market.ext.reserve.assign(n + 1, std::vector<std::int64_t>(n + 1, 0));
    market.ext.quality.assign(n + 1, std::vector<std::int64_t>(n + 1, 0));
  }
  return market;
}

BidTrace run_bidding_gs(const BidInstance& market) {
  check_market(market);
  const Instance& inst = market.base;
  const BidExtension& ext = market.ext;
  const int n = inst.n;

  BidTrace trace;
  trace.market = market;
  trace.final = Matching(n);
  trace.final_quote.assign(n + 1, -1);

  auto score = [&](GirlId g, BoyId b, std::int64_t quote) {
    return ext.quality[g][b] - ext.lambda[g] * quote;
  };
  // Strictly better in the girl's eyes: score, then quality, then low id.
  auto outbids = [&](GirlId g, BoyId a, std::int64_t qa, BoyId b, std::int64_t qb) {
    std::int64_t sa = score(g, a, qa), sb = score(g, b, qb);
    if (sa != sb) return sa > sb;
    if (ext.quality[g][a] != ext.quality[g][b])
      return ext.quality[g][a] > ext.quality[g][b];
    return a < b;
  };

  std::vector<std::vector<GirlId>> flat(n + 1);
  std::vector<size_t> next(n + 1, 0);
  for (BoyId b = 1; b <= n; ++b) flat[b] = inst.boys[b].flatten();

  int event_id = 0;
  for (BoyId enter = 1; enter <= n; ++enter) {
    BoyId active = enter;
    while (active != 0) {
      if (next[active] >= flat[active].size())
        throw std::logic_error("uncoupled boy ran out of girls");
      GirlId g = flat[active][next[active]++];
      BoyId incumbent = trace.final.boy_of[g];
      if (incumbent == 0) {
        std::int64_t quote = ext.budget[g];
        trace.events.push_back(
            {++event_id, BidEventKind::Proposal, active, g, quote, false, true, 0});
        trace.final.couple(active, g);
        trace.final_quote[active] = quote;
        active = 0;
        continue;
      }
      std::int64_t challenge = ext.reserve[active][g];
      std::int64_t defence = ext.reserve[incumbent][g];
      bool wins = outbids(g, active, challenge, incumbent, defence);
      // The reveal is a new quote only the first time it undercuts.
      if (defence < trace.final_quote[incumbent])
        trace.events.push_back({++event_id, BidEventKind::Requote, incumbent, g,
                                defence, true, !wins, 0});
      trace.events.push_back({++event_id, BidEventKind::Proposal, active, g,
                              challenge, true, wins, wins ? incumbent : BoyId{0}});
      trace.final_quote[incumbent] = defence;
      if (wins) {
        trace.final.couple(active, g);
        trace.final_quote[active] = challenge;
        trace.final_quote[incumbent] = -1;
        active = incumbent;
      }
    }
  }
  return trace;
}

}  // namespace smgame
