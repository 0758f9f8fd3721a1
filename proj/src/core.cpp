#include "smgame/core.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace smgame {

bool PreferenceList::has_ties() const {
  for (const auto& lv : levels)
    if (lv.size() > 1) return true;
  return false;
}

int PreferenceList::size() const {
  int s = 0;
  for (const auto& lv : levels) s += (int)lv.size();
  return s;
}

std::vector<GirlId> PreferenceList::flatten() const {
  std::vector<GirlId> out;
  out.reserve(size());
  for (const auto& lv : levels) {
    auto sorted = lv;
    std::sort(sorted.begin(), sorted.end());
    out.insert(out.end(), sorted.begin(), sorted.end());
  }
  return out;
}

std::vector<GirlId> PreferenceList::flatten(const std::vector<GirlId>& order) const {
  std::vector<int> pos(*std::max_element(order.begin(), order.end()) + 1, 1 << 30);
  for (int i = 0; i < (int)order.size(); ++i) pos[order[i]] = i;
  std::vector<GirlId> out;
  out.reserve(size());
  for (const auto& lv : levels) {
    auto sorted = lv;
    std::sort(sorted.begin(), sorted.end(), [&](GirlId a, GirlId b) {
      int pa = a < (int)pos.size() ? pos[a] : (1 << 30);
      int pb = b < (int)pos.size() ? pos[b] : (1 << 30);
      if (pa != pb) return pa < pb;
      return a < b;
    });
    out.insert(out.end(), sorted.begin(), sorted.end());
  }
  return out;
}

int Instance::real_boys() const {
  int c = 0;
  for (BoyId b = 1; b <= n; ++b)
    if (!fictitious_boy[b]) ++c;
  return c;
}

int Instance::real_girls() const {
  int c = 0;
  for (GirlId g = 1; g <= n; ++g)
    if (!fictitious_girl[g]) ++c;
  return c;
}

const std::vector<std::vector<int>>& Instance::girl_rank() const {
  if (girl_rank_.empty()) {
    girl_rank_.assign(n + 1, std::vector<int>(n + 1, 1 << 30));
    for (GirlId g = 1; g <= n; ++g)
      for (int r = 0; r < (int)girls[g].size(); ++r) girl_rank_[g][girls[g][r]] = r;
  }
  return girl_rank_;
}

const std::vector<std::vector<int>>& Instance::boy_rank() const {
  if (boy_rank_.empty()) {
    boy_rank_.assign(n + 1, std::vector<int>(n + 1, 1 << 30));
    for (BoyId b = 1; b <= n; ++b) {
      auto flat = boys[b].flatten();
      for (int r = 0; r < (int)flat.size(); ++r) boy_rank_[b][flat[r]] = r;
    }
  }
  return boy_rank_;
}

int Instance::boy_level(BoyId b, GirlId g) const {
  if (boy_level_.empty()) {
    boy_level_.assign(n + 1, std::vector<int>(n + 1, 1 << 30));
    for (BoyId i = 1; i <= n; ++i)
      for (int lv = 0; lv < (int)boys[i].levels.size(); ++lv)
        for (GirlId x : boys[i].levels[lv]) boy_level_[i][x] = lv;
  }
  return boy_level_[b][g];
}

bool Instance::girl_prefers(GirlId g, BoyId a, BoyId b) const {
  const auto& r = girl_rank();
  return r[g][a] < r[g][b];
}

void Instance::validate() const {
  if (n < 0) throw std::logic_error("negative size");
  if ((int)boys.size() != n + 1 || (int)girls.size() != n + 1 ||
      (int)fictitious_boy.size() != n + 1 || (int)fictitious_girl.size() != n + 1)
    throw std::logic_error("inconsistent container sizes");
  for (BoyId b = 1; b <= n; ++b) {
    std::vector<bool> seen(n + 1, false);
    int count = 0;
    for (const auto& lv : boys[b].levels) {
      if (lv.empty()) throw std::logic_error("empty tie group");
      for (GirlId g : lv) {
        if (g < 1 || g > n) throw std::logic_error("girl id out of range");
        if (seen[g]) throw std::logic_error("duplicate girl in a boy list");
        seen[g] = true;
        ++count;
      }
    }
    if (count != n) throw std::logic_error("incomplete boy list");
  }
  for (GirlId g = 1; g <= n; ++g) {
    std::vector<bool> seen(n + 1, false);
    if ((int)girls[g].size() != n) throw std::logic_error("incomplete girl list");
    for (BoyId b : girls[g]) {
      if (b < 1 || b > n) throw std::logic_error("boy id out of range");
      if (seen[b]) throw std::logic_error("duplicate boy in a girl list");
      seen[b] = true;
    }
  }
}

bool operator==(const Instance& a, const Instance& b) {
  return a.n == b.n && a.base == b.base && a.boys == b.boys && a.girls == b.girls &&
         a.fictitious_boy == b.fictitious_boy && a.fictitious_girl == b.fictitious_girl;
}

Matching::Matching(int n) : girl_of(n + 1, 0), boy_of(n + 1, 0) {}

void Matching::couple(BoyId b, GirlId g) {
  if (girl_of[b]) boy_of[girl_of[b]] = 0;
  if (boy_of[g]) girl_of[boy_of[g]] = 0;
  girl_of[b] = g;
  boy_of[g] = b;
}

void Matching::uncouple_boy(BoyId b) {
  if (girl_of[b]) boy_of[girl_of[b]] = 0;
  girl_of[b] = 0;
}

bool Matching::complete() const {
  for (int b = 1; b <= n(); ++b)
    if (!girl_of[b]) return false;
  return true;
}

Matching Matching::project(const Instance& inst) const {
  Matching out(inst.n);
  for (BoyId b = 1; b <= std::min(n(), inst.n); ++b) {
    GirlId g = girl_of[b];
    if (g >= 1 && g <= inst.n && !inst.fictitious_boy[b] && !inst.fictitious_girl[g])
      out.couple(b, g);
  }
  return out;
}

std::vector<BlockingPair> blocking_pairs(const Instance& inst, const Matching& m) {
  if (m.n() != inst.n || !m.complete())
    throw std::invalid_argument("blocking_pairs requires a complete matching");
  std::vector<BlockingPair> out;
  const auto& gr = inst.girl_rank();
  for (BoyId b = 1; b <= inst.n; ++b) {
    int own = inst.boy_level(b, m.girl_of[b]);
    for (GirlId g = 1; g <= inst.n; ++g) {
      if (g == m.girl_of[b]) continue;
      if (inst.boy_level(b, g) < own && gr[g][b] < gr[g][m.boy_of[g]])
        out.push_back({b, g});
    }
  }
  return out;
}

bool is_stable(const Instance& inst, const Matching& m) {
  return blocking_pairs(inst, m).empty();
}

AugmentedInstance default_augmented(const Instance& inst) {
  AugmentedInstance aug;
  aug.inst = inst;
  aug.ult.assign(inst.n + 1, 0);
  aug.bottom.assign(inst.n + 1, 0);
  for (BoyId b = 1; b <= inst.n; ++b) {
    auto flat = inst.boys[b].flatten();
    aug.ult[b] = flat.back();
    aug.bottom[b] = flat.back();
  }
  return aug;
}

namespace {

// ---- file format ----

struct RawParse {
  int declared_boys = -1, declared_girls = -1;
  int base = 1;
  bool autocomplete = false;
  bool saw_ids = false;  // base must come first
  std::vector<std::vector<std::vector<int>>> boy_levels;  // external ids
  std::vector<std::vector<int>> girl_lists;
  std::vector<int> boy_line, girl_line;
  std::map<int, int> ult, bottom;      // external boy -> external girl
  std::map<int, int> slots;            // external girl -> capacity
  bool bid_present = false;
  std::map<int, int64_t> budget, lambda;
  std::map<std::pair<int, int>, int64_t> reserve;  // (boy, girl) -> value
  std::map<std::pair<int, int>, int> reserve_ln;
  std::map<int, std::vector<int64_t>> quality;     // girl -> per-boy scores
};

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

long long parse_int(const std::string& tok, int ln) {
  try {
    size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(ln, "expected integer, got '" + tok + "'");
  }
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream iss(s);
  std::vector<std::string> out;
  std::string t;
  while (iss >> t) out.push_back(t);
  return out;
}

}  // namespace

ParsedFile parse_instance(std::istream& in) {
  RawParse raw;
  std::string line;
  int ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;

    auto colon = line.find(':');
    std::string head = strip(colon == std::string::npos ? line : line.substr(0, colon));
    std::string tail = colon == std::string::npos ? "" : strip(line.substr(colon + 1));
    auto htoks = split_ws(head);
    if (htoks.empty()) throw ParseError(ln, "empty directive");
    const std::string& verb = htoks[0];

    if (verb == "boys" || verb == "girls") {
      if (htoks.size() != 2 || colon != std::string::npos)
        throw ParseError(ln, "expected '" + verb + " N'");
      int v = (int)parse_int(htoks[1], ln);
      if (v < 1) throw ParseError(ln, verb + " count must be positive");
      (verb == "boys" ? raw.declared_boys : raw.declared_girls) = v;
    } else if (verb == "base") {
      if (htoks.size() != 2) throw ParseError(ln, "expected 'base 0|1'");
      int v = (int)parse_int(htoks[1], ln);
      if (v != 0 && v != 1) throw ParseError(ln, "base must be 0 or 1");
      if (raw.saw_ids) throw ParseError(ln, "base must precede all lists");
      raw.base = v;
    } else if (verb == "autocomplete") {
      if (htoks.size() != 2 || htoks[1] != "on")
        throw ParseError(ln, "expected 'autocomplete on'");
      raw.autocomplete = true;
    } else if (verb == "b" || verb == "g") {
      if (htoks.size() != 2 || colon == std::string::npos)
        throw ParseError(ln, "expected '" + verb + " I: ...'");
      if (raw.declared_boys < 0 || raw.declared_girls < 0)
        throw ParseError(ln, "boys/girls counts must come first");
      raw.saw_ids = true;
      int id = (int)parse_int(htoks[1], ln) - raw.base + 1;
      int limit = verb == "b" ? raw.declared_boys : raw.declared_girls;
      if (id < 1 || id > limit) throw ParseError(ln, "id out of range");
      if (verb == "b") {
        if ((int)raw.boy_levels.size() <= raw.declared_boys) {
          raw.boy_levels.resize(raw.declared_boys + 1);
          raw.boy_line.resize(raw.declared_boys + 1, 0);
        }
        if (raw.boy_line[id]) throw ParseError(ln, "duplicate list for this boy");
        raw.boy_line[id] = ln;
        std::vector<std::vector<int>> levels;
        std::vector<int>* open = nullptr;
        std::string tok;
        auto flush = [&]() {
          if (tok.empty()) return;
          int v = (int)parse_int(tok, ln) - raw.base + 1;
          if (open)
            open->push_back(v);
          else
            levels.push_back({v});
          tok.clear();
        };
        for (char c : tail) {
          if (c == '(') {
            flush();
            if (open) throw ParseError(ln, "nested tie group");
            levels.emplace_back();
            open = &levels.back();
          } else if (c == ')') {
            flush();
            if (!open) throw ParseError(ln, "unmatched ')'");
            if (open->empty()) throw ParseError(ln, "empty tie group");
            open = nullptr;
          } else if (c == ' ' || c == '\t' || c == ',') {
            flush();
          } else {
            tok.push_back(c);
          }
        }
        flush();
        if (open) throw ParseError(ln, "unmatched '('");
        raw.boy_levels[id] = std::move(levels);
      } else {
        if ((int)raw.girl_lists.size() <= raw.declared_girls) {
          raw.girl_lists.resize(raw.declared_girls + 1);
          raw.girl_line.resize(raw.declared_girls + 1, 0);
        }
        if (raw.girl_line[id]) throw ParseError(ln, "duplicate list for this girl");
        raw.girl_line[id] = ln;
        std::vector<int> lst;
        for (auto& t : split_ws(tail)) {
          std::string tt = t;
          while (!tt.empty() && tt.back() == ',') tt.pop_back();
          if (tt.empty()) continue;
          lst.push_back((int)parse_int(tt, ln) - raw.base + 1);
        }
        raw.girl_lists[id] = std::move(lst);
      }
    } else if (verb == "ult" || verb == "bottom" || verb == "slots" || verb == "budget" ||
               verb == "lambda") {
      if (htoks.size() != 2 || colon == std::string::npos)
        throw ParseError(ln, "expected '" + verb + " I: V'");
      raw.saw_ids = true;
      int id = (int)parse_int(htoks[1], ln) - raw.base + 1;
      auto vals = split_ws(tail);
      if (vals.size() != 1) throw ParseError(ln, "expected a single value");
      long long v = parse_int(vals[0], ln);
      if (verb == "ult")
        raw.ult[id] = (int)v - raw.base + 1;
      else if (verb == "bottom")
        raw.bottom[id] = (int)v - raw.base + 1;
      else if (verb == "slots") {
        if (v < 1) throw ParseError(ln, "capacity must be >= 1");
        raw.slots[id] = (int)v;
      } else if (verb == "budget") {
        raw.bid_present = true;
        raw.budget[id] = v;
      } else {
        raw.bid_present = true;
        if (v < 0) throw ParseError(ln, "lambda must be non-negative");
        raw.lambda[id] = v;
      }
    } else if (verb == "reserve") {
      if (htoks.size() != 3 || colon == std::string::npos)
        throw ParseError(ln, "expected 'reserve I J: V'");
      raw.saw_ids = true;
      raw.bid_present = true;
      int b = (int)parse_int(htoks[1], ln) - raw.base + 1;
      int g = (int)parse_int(htoks[2], ln) - raw.base + 1;
      auto vals = split_ws(tail);
      if (vals.size() != 1) throw ParseError(ln, "expected a single value");
      raw.reserve[{b, g}] = parse_int(vals[0], ln);
      raw.reserve_ln[{b, g}] = ln;
    } else if (verb == "quality") {
      if (htoks.size() != 2 || colon == std::string::npos)
        throw ParseError(ln, "expected 'quality J: s1 s2 ...'");
      raw.saw_ids = true;
      raw.bid_present = true;
      int g = (int)parse_int(htoks[1], ln) - raw.base + 1;
      std::vector<int64_t> scores;
      for (auto& t : split_ws(tail)) scores.push_back(parse_int(t, ln));
      if (raw.declared_boys > 0 && (int)scores.size() != raw.declared_boys)
        throw ParseError(ln, "quality needs one score per boy");
      raw.quality[g] = std::move(scores);
    } else {
      throw ParseError(ln, "unknown directive '" + verb + "'");
    }
  }

  if (raw.declared_boys < 0) throw ParseError(ln, "missing 'boys N'");
  if (raw.declared_girls < 0) throw ParseError(ln, "missing 'girls M'");
  int B = raw.declared_boys, G = raw.declared_girls;
  raw.boy_levels.resize(B + 1);
  raw.boy_line.resize(B + 1, 0);
  raw.girl_lists.resize(G + 1);
  raw.girl_line.resize(G + 1, 0);

  // Complete the declared lists before padding.
  for (int b = 1; b <= B; ++b) {
    std::vector<bool> seen(G + 1, false);
    int count = 0;
    for (auto& lv : raw.boy_levels[b])
      for (int g : lv) {
        if (g < 1 || g > G) throw ParseError(raw.boy_line[b], "girl id out of range");
        if (seen[g]) throw ParseError(raw.boy_line[b], "duplicate girl in list");
        seen[g] = true;
        ++count;
      }
    if (count < G) {
      if (!raw.autocomplete)
        throw ParseError(raw.boy_line[b], "incomplete boy list (no 'autocomplete on')");
      for (int g = 1; g <= G; ++g)
        if (!seen[g]) raw.boy_levels[b].push_back({g});
    }
  }
  for (int g = 1; g <= G; ++g) {
    std::vector<bool> seen(B + 1, false);
    for (int b : raw.girl_lists[g]) {
      if (b < 1 || b > B) throw ParseError(raw.girl_line[g], "boy id out of range");
      if (seen[b]) throw ParseError(raw.girl_line[g], "duplicate boy in list");
      seen[b] = true;
    }
    if ((int)raw.girl_lists[g].size() < B) {
      if (!raw.autocomplete)
        throw ParseError(raw.girl_line[g], "incomplete girl list (no 'autocomplete on')");
      for (int b = 1; b <= B; ++b)
        if (!seen[b]) raw.girl_lists[g].push_back(b);
    }
  }

  // Square it up. Real participants keep ids 1..B / 1..G, padding goes after.
  int n = std::max(B, G);
  ParsedFile pf;
  Instance& inst = pf.inst;
  inst.n = n;
  inst.base = raw.base;
  inst.boys.assign(n + 1, {});
  inst.girls.assign(n + 1, {});
  inst.fictitious_boy.assign(n + 1, false);
  inst.fictitious_girl.assign(n + 1, false);
  for (int b = B + 1; b <= n; ++b) inst.fictitious_boy[b] = true;
  for (int g = G + 1; g <= n; ++g) inst.fictitious_girl[g] = true;
  for (int b = 1; b <= B; ++b) {
    inst.boys[b].levels = raw.boy_levels[b];
    for (int g = G + 1; g <= n; ++g) inst.boys[b].levels.push_back({g});
  }
  for (int b = B + 1; b <= n; ++b)
    for (int g = 1; g <= n; ++g) inst.boys[b].levels.push_back({g});
  for (int g = 1; g <= G; ++g) {
    inst.girls[g] = raw.girl_lists[g];
    for (int b = B + 1; b <= n; ++b) inst.girls[g].push_back(b);
  }
  for (int g = G + 1; g <= n; ++g) {
    inst.girls[g].resize(n);
    std::iota(inst.girls[g].begin(), inst.girls[g].end(), 1);
  }
  inst.validate();

  if (!raw.ult.empty() || !raw.bottom.empty()) {
    AugmentedInstance aug = default_augmented(inst);
    for (auto [b, g] : raw.ult) {
      if (b < 1 || b > B) throw ParseError(0, "ult boy id out of range");
      if (g < 1 || g > G) throw ParseError(0, "ult girl id out of range");
      aug.ult[b] = g;
    }
    for (auto [b, g] : raw.bottom) {
      if (b < 1 || b > B) throw ParseError(0, "bottom boy id out of range");
      if (g < 1 || g > G) throw ParseError(0, "bottom girl id out of range");
      aug.bottom[b] = g;
    }
    pf.aug = std::move(aug);
  }

  for (auto [g, k] : raw.slots) {
    if (g < 1 || g > G) throw ParseError(0, "slots girl id out of range");
    pf.slots[g] = k;
  }

  if (raw.bid_present) {
    BidExtension bid;
    bid.budget.assign(n + 1, 0);
    bid.lambda.assign(n + 1, 0);
    bid.reserve.assign(n + 1, std::vector<int64_t>(n + 1, 0));
    bid.quality.assign(n + 1, std::vector<int64_t>(n + 1, 0));
    for (auto [g, v] : raw.budget) {
      if (g < 1 || g > G) throw ParseError(0, "budget girl id out of range");
      bid.budget[g] = v;
    }
    for (auto [g, v] : raw.lambda) {
      if (g < 1 || g > G) throw ParseError(0, "lambda girl id out of range");
      bid.lambda[g] = v;
    }
    for (auto& [g, scores] : raw.quality) {
      if (g < 1 || g > G) throw ParseError(0, "quality girl id out of range");
      for (int b = 1; b <= (int)scores.size(); ++b) bid.quality[g][b] = scores[b - 1];
    }
    for (auto& [key, v] : raw.reserve) {
      auto [b, g] = key;
      int rln = raw.reserve_ln[key];
      if (b < 1 || b > B || g < 1 || g > G) throw ParseError(rln, "reserve id out of range");
      bid.reserve[b][g] = v;
    }
    // A boy cannot ask more than the girl could ever pay.
    for (auto& [key, v] : raw.reserve) {
      auto [b, g] = key;
      if (v > bid.budget[g])
        throw ParseError(raw.reserve_ln[key], "reserve exceeds girl's budget");
    }
    pf.bid = std::move(bid);
  }

  return pf;
}

ParsedFile parse_instance_text(const std::string& text) {
  std::istringstream iss(text);
  return parse_instance(iss);
}

ParsedFile parse_instance_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return parse_instance(f);
}

std::string write_instance(const ParsedFile& pf) {
  const Instance& inst = pf.inst;
  int B = inst.real_boys(), G = inst.real_girls();
  int base = inst.base;
  std::ostringstream out;
  out << "boys " << B << "\n";
  out << "girls " << G << "\n";
  if (base != 1) out << "base " << base << "\n";
  for (BoyId b = 1; b <= B; ++b) {
    out << "b " << b - 1 + base << ":";
    for (const auto& lv : inst.boys[b].levels) {
      std::vector<GirlId> real;
      for (GirlId g : lv)
        if (!inst.fictitious_girl[g]) real.push_back(g);
      if (real.empty()) continue;
      if (real.size() > 1) {
        out << " (";
        for (size_t i = 0; i < real.size(); ++i)
          out << (i ? " " : "") << real[i] - 1 + base;
        out << ")";
      } else {
        out << " " << real[0] - 1 + base;
      }
    }
    out << "\n";
  }
  for (GirlId g = 1; g <= G; ++g) {
    out << "g " << g - 1 + base << ":";
    for (BoyId b : inst.girls[g])
      if (!inst.fictitious_boy[b]) out << " " << b - 1 + base;
    out << "\n";
  }
  if (pf.aug) {
    for (BoyId b = 1; b <= B; ++b)
      out << "ult " << b - 1 + base << ": " << pf.aug->ult[b] - 1 + base << "\n";
    for (BoyId b = 1; b <= B; ++b)
      out << "bottom " << b - 1 + base << ": " << pf.aug->bottom[b] - 1 + base << "\n";
  }
  for (auto [g, k] : pf.slots) out << "slots " << g - 1 + base << ": " << k << "\n";
  if (pf.bid) {
    for (GirlId g = 1; g <= G; ++g)
      out << "budget " << g - 1 + base << ": " << pf.bid->budget[g] << "\n";
    for (GirlId g = 1; g <= G; ++g)
      out << "lambda " << g - 1 + base << ": " << pf.bid->lambda[g] << "\n";
    for (GirlId g = 1; g <= G; ++g) {
      out << "quality " << g - 1 + base << ":";
      for (BoyId b = 1; b <= B; ++b) out << " " << pf.bid->quality[g][b];
      out << "\n";
    }
    for (BoyId b = 1; b <= B; ++b)
      for (GirlId g = 1; g <= G; ++g)
        if (pf.bid->reserve[b][g])
          out << "reserve " << b - 1 + base << " " << g - 1 + base << ": "
              << pf.bid->reserve[b][g] << "\n";
  }
  return out.str();
}

std::string format_matching(const Instance& inst, const Matching& m) {
  std::ostringstream out;
  for (BoyId b = 1; b <= inst.n; ++b) {
    if (inst.fictitious_boy[b]) continue;
    GirlId g = b <= m.n() ? m.girl_of[b] : 0;
    if (!g || inst.fictitious_girl[g]) continue;
    out << "b" << b - 1 + inst.base << " g" << g - 1 + inst.base << "\n";
  }
  return out.str();
}

Matching parse_matching(const Instance& inst, std::istream& in) {
  Matching m(inst.n);
  std::string line;
  int ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    auto toks = split_ws(line);
    if (toks.size() != 2 || toks[0].size() < 2 || toks[1].size() < 2 ||
        toks[0][0] != 'b' || toks[1][0] != 'g')
      throw ParseError(ln, "expected 'bI gJ'");
    int b = (int)parse_int(toks[0].substr(1), ln) - inst.base + 1;
    int g = (int)parse_int(toks[1].substr(1), ln) - inst.base + 1;
    if (b < 1 || b > inst.n || g < 1 || g > inst.n)
      throw ParseError(ln, "id out of range");
    if (m.girl_of[b] || m.boy_of[g]) throw ParseError(ln, "duplicate pairing");
    m.couple(b, g);
  }
  return m;
}

Instance make_instance(std::vector<PreferenceList> boys,
                       std::vector<std::vector<BoyId>> girls, int base) {
  if (boys.size() != girls.size() || boys.empty())
    throw std::invalid_argument("boys and girls must have equal counts");
  Instance inst;
  inst.n = (int)boys.size() - 1;
  inst.base = base;
  inst.boys = std::move(boys);
  inst.girls = std::move(girls);
  inst.fictitious_boy.assign(inst.n + 1, false);
  inst.fictitious_girl.assign(inst.n + 1, false);
  inst.validate();
  return inst;
}

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace {

std::vector<int> shuffled_ids(int n, uint64_t& state) {
  std::vector<int> a(n);
  std::iota(a.begin(), a.end(), 1);
  for (int i = n - 1; i >= 1; --i) {
    int j = (int)(splitmix64(state) % (uint64_t)(i + 1));
    std::swap(a[i], a[j]);
  }
  return a;
}

ParsedFile from_lists(int n, std::vector<std::vector<int>> boy_lists,
                      std::vector<std::vector<int>> girl_lists) {
  ParsedFile pf;
  Instance& inst = pf.inst;
  inst.n = n;
  inst.base = 1;
  inst.boys.assign(n + 1, {});
  inst.girls.assign(n + 1, {});
  inst.fictitious_boy.assign(n + 1, false);
  inst.fictitious_girl.assign(n + 1, false);
  for (int b = 1; b <= n; ++b)
    for (int g : boy_lists[b]) inst.boys[b].levels.push_back({g});
  for (int g = 1; g <= n; ++g) inst.girls[g] = girl_lists[g];
  inst.validate();
  return pf;
}

}  // namespace

ParsedFile gen_random(int n, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  uint64_t state = seed;
  std::vector<std::vector<int>> boy_lists(n + 1), girl_lists(n + 1);
  for (int b = 1; b <= n; ++b) boy_lists[b] = shuffled_ids(n, state);
  for (int g = 1; g <= n; ++g) girl_lists[g] = shuffled_ids(n, state);
  return from_lists(n, std::move(boy_lists), std::move(girl_lists));
}

ParsedFile gen_inferno(int n) {
  if (n < 3) throw std::invalid_argument("inferno needs n >= 3");
  std::vector<std::vector<int>> boy_lists(n + 1), girl_lists(n + 1);
  for (int i = 1; i < n; ++i) {
    for (int g = i; g < n; ++g) boy_lists[i].push_back(g);
    for (int g = 1; g < i; ++g) boy_lists[i].push_back(g);
    boy_lists[i].push_back(n);
  }
  for (int g = 1; g <= n; ++g) boy_lists[n].push_back(g);
  for (int j = 1; j <= n - 2; ++j) {
    for (int b = j + 1; b < n; ++b) girl_lists[j].push_back(b);
    girl_lists[j].push_back(n);
    for (int b = 1; b <= j; ++b) girl_lists[j].push_back(b);
  }
  for (int b = 1; b <= n; ++b) girl_lists[n - 1].push_back(b);
  girl_lists[n].push_back(n);
  for (int b = 1; b < n; ++b) girl_lists[n].push_back(b);
  return from_lists(n, std::move(boy_lists), std::move(girl_lists));
}

}  // namespace smgame
