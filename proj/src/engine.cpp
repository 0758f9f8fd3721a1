#include "smgame/engine.hpp"

#include <algorithm>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace smgame {

std::vector<StaticProfile> naive_profiles(const Instance& inst) {
  std::vector<StaticProfile> out(inst.n + 1);
  for (BoyId b = 1; b <= inst.n; ++b) out[b] = inst.boys[b].flatten();
  return out;
}

namespace {

struct Runner {
  const Instance& inst;
  PlayTrace trace;
  std::vector<int> next;  // per boy: position in his profile

  explicit Runner(const Instance& inst_, std::vector<StaticProfile> profiles)
      : inst(inst_), next(inst_.n + 1, 0) {
    if ((int)profiles.size() != inst.n + 1)
      throw std::invalid_argument("need one profile per boy");
    trace.inst = inst;
    trace.profiles = std::move(profiles);
    trace.naive = trace.profiles == naive_profiles(inst);
    trace.final = Matching(inst.n);
    trace.temperature.assign(inst.n + 1, {});
    for (GirlId g = 1; g <= inst.n; ++g) trace.temperature[g].push_back(inst.n);
  }

  // Returns the expelled boy, or 0 if the proposal closed with a vacant
  // girl or a refusal.  `again` reports whether the proposer is still free.
  BoyId propose(BoyId b, bool& again) {
    auto& prof = trace.profiles[b];
    if (next[b] >= (int)prof.size())
      throw std::runtime_error("boy " + std::to_string(b - 1 + inst.base) +
                               " ran out of proposals");
    GirlId g = prof[next[b]++];
    BoyId holder = trace.final.boy_of[g];
    PlayElement el;
    el.id = (int)trace.elements.size() + 1;
    el.boy = b;
    el.girl = g;
    if (holder == 0 || inst.girl_prefers(g, b, holder)) {
      el.accepted = true;
      el.displaced = holder;
      el.victor = b;
      trace.final.couple(b, g);
      trace.temperature[g].push_back(inst.girl_rank()[g][b]);
      again = false;
    } else {
      el.accepted = false;
      el.displaced = 0;
      el.victor = holder;
      again = true;
    }
    trace.elements.push_back(el);
    return el.displaced;
  }

  void finish() {
    // Rounds are derived from the elements: each vacant acceptance closes
    // one, and the opener labels it.
    for (int i = 0; i < (int)trace.elements.size(); ++i) {
      if (i == 0 || (trace.elements[i - 1].accepted && !trace.elements[i - 1].displaced)) {
        trace.round_first.push_back(i);
        trace.round_boy.push_back(trace.elements[i].boy);
      }
    }
  }
};

}  // namespace

PlayTrace run_static(const Instance& inst, std::vector<StaticProfile> profiles) {
  Runner r(inst, std::move(profiles));
  for (BoyId enter = 1; enter <= inst.n; ++enter) {
    BoyId cur = enter;
    while (cur) {
      bool again = false;
      BoyId out = r.propose(cur, again);
      cur = again ? cur : out;
    }
  }
  r.finish();
  return r.trace;
}

PlayTrace run_static(const Instance& inst, std::vector<StaticProfile> profiles,
                     uint64_t schedule_seed) {
  Runner r(inst, std::move(profiles));
  uint64_t state = schedule_seed;
  std::vector<BoyId> pool(inst.n);
  for (BoyId b = 1; b <= inst.n; ++b) pool[b - 1] = b;
  while (!pool.empty()) {
    size_t idx = (size_t)(splitmix64(state) % pool.size());
    BoyId b = pool[idx];
    bool again = false;
    BoyId out = r.propose(b, again);
    if (!again) {
      pool.erase(pool.begin() + idx);
      if (out) pool.push_back(out);
    }
  }
  r.finish();
  return r.trace;
}

PlayTrace run_gale_shapley(const Instance& inst) {
  return run_static(inst, naive_profiles(inst));
}

std::vector<std::pair<BoyId, GirlId>> hopeless_pairs(const PlayTrace& trace) {
  if (!trace.final.complete())
    throw std::invalid_argument("hopeless_pairs needs a complete trace");
  std::vector<int> hits(trace.inst.n + 1, 0);
  for (const auto& el : trace.elements) ++hits[el.girl];
  std::vector<std::pair<BoyId, GirlId>> out;
  for (BoyId b = 1; b <= trace.inst.n; ++b) {
    GirlId g = trace.final.girl_of[b];
    if (hits[g] == 1) out.push_back({b, g});
  }
  return out;
}

std::string format_trace(const PlayTrace& trace, bool with_ids) {
  std::ostringstream out;
  int base = trace.inst.base;
  for (size_t r = 0; r < trace.round_first.size(); ++r) {
    int first = trace.round_first[r];
    int last = r + 1 < trace.round_first.size() ? trace.round_first[r + 1]
                                                : (int)trace.elements.size();
    out << "Round b" << trace.round_boy[r] - 1 + base << ":";
    for (int i = first; i < last; ++i) {
      const auto& el = trace.elements[i];
      out << (i == first ? " " : " | ");
      out << "b" << el.boy - 1 + base << "->g" << el.girl - 1 + base;
      if (!el.accepted) out << "(b" << el.victor - 1 + base << ")";
      if (with_ids) out << "(" << el.id << ")";
    }
    out << "\n";
  }
  return out.str();
}

std::string normalize_trace_text(const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (size_t i = 0; i < text.size(); ++i) {
    // UTF-8 arrow
    if (i + 2 < text.size() && (unsigned char)text[i] == 0xE2 &&
        (unsigned char)text[i + 1] == 0x86 && (unsigned char)text[i + 2] == 0x92) {
      s += "->";
      i += 2;
    } else if (text[i] == ';') {
      s += '|';
    } else if (text[i] != ' ' && text[i] != '\t' && text[i] != '\r') {
      s += text[i];
    }
  }
  std::istringstream lines(s);
  std::string line, outText;
  static const std::regex self_victor(R"(b([0-9]+)->g([0-9]+)\(b\1\))");
  while (std::getline(lines, line)) {
    while (!line.empty() && line.back() == '.') line.pop_back();
    if (line.empty()) continue;
    outText += std::regex_replace(line, self_victor, "b$1->g$2");
    outText += '\n';
  }
  return outText;
}

}  // namespace smgame
