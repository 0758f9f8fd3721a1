#include "smgame/transform.hpp"

#include <algorithm>
#include <stdexcept>

namespace smgame {

namespace {

// Ascending singleton levels over ids lo..hi.
PreferenceList ascending_levels(int lo, int hi) {
  PreferenceList p;
  for (int i = lo; i <= hi; ++i) p.levels.push_back({i});
  return p;
}

}  // namespace

Instance pad_fictitious(const Instance& inst,
                        const std::map<BoyId, std::set<GirlId>>& known) {
  const int n = inst.n;
  for (auto& [b, girls] : known) {
    if (b < 1 || b > n || inst.fictitious_boy[b])
      throw std::invalid_argument("awareness set for unknown boy");
    for (GirlId g : girls)
      if (g < 1 || g > n || inst.fictitious_girl[g])
        throw std::invalid_argument("awareness set names unknown girl");
  }

  auto aware = [&](BoyId b, GirlId g) {
    auto it = known.find(b);
    return it == known.end() || it->second.count(g) > 0;
  };

  int extra = 0;
  for (auto& [b, girls] : known) {
    (void)b;
    extra = std::max(extra, n - (int)girls.size());
  }
  if (extra == 0) return inst;

  const int nn = n + extra;
  Instance out;
  out.n = nn;
  out.base = inst.base;
  out.boys.assign(nn + 1, {});
  out.girls.assign(nn + 1, {});
  out.fictitious_boy = inst.fictitious_boy;
  out.fictitious_girl = inst.fictitious_girl;
  out.fictitious_boy.resize(nn + 1, true);
  out.fictitious_girl.resize(nn + 1, true);

  for (BoyId b = 1; b <= n; ++b) {
    PreferenceList& dst = out.boys[b];
    for (auto& level : inst.boys[b].levels) {
      std::vector<GirlId> kept;
      for (GirlId g : level)
        if (aware(b, g)) kept.push_back(g);
      if (!kept.empty()) dst.levels.push_back(std::move(kept));
    }
    for (int f = n + 1; f <= nn; ++f) dst.levels.push_back({f});
    for (auto& level : inst.boys[b].levels) {
      std::vector<GirlId> dropped;
      for (GirlId g : level)
        if (!aware(b, g)) dropped.push_back(g);
      if (!dropped.empty()) dst.levels.push_back(std::move(dropped));
    }
  }
  for (int b = n + 1; b <= nn; ++b) out.boys[b] = ascending_levels(1, nn);

  for (GirlId g = 1; g <= n; ++g) {
    out.girls[g] = inst.girls[g];
    for (int b = n + 1; b <= nn; ++b) out.girls[g].push_back(b);
  }
  for (int g = n + 1; g <= nn; ++g) {
    out.girls[g].resize(nn);
    for (int b = 1; b <= nn; ++b) out.girls[g][b - 1] = b;
  }

  out.validate();
  return out;
}

std::vector<GirlId> SlotExpansion::project(const Matching& m) const {
  std::vector<GirlId> out(m.girl_of.size(), 0);
  for (int b = 1; b < (int)out.size(); ++b)
    if (m.girl_of[b]) out[b] = parent[m.girl_of[b]];
  return out;
}

SlotExpansion expand_slots(const Instance& inst,
                           const std::map<GirlId, int>& slots) {
  const int n = inst.n;
  for (auto& [g, k] : slots) {
    if (g < 1 || g > n) throw std::invalid_argument("slot girl out of range");
    if (k < 1) throw std::invalid_argument("capacity must be >= 1");
  }

  auto capacity = [&](GirlId g) {
    auto it = slots.find(g);
    return it == slots.end() ? 1 : std::min(it->second, n);
  };

  std::vector<int> first(n + 2, 0);  // first slot id of each original girl
  first[1] = 1;
  for (GirlId g = 1; g <= n; ++g) first[g + 1] = first[g] + capacity(g);
  const int ng = first[n + 1] - 1;
  const int nn = std::max(n, ng);

  SlotExpansion ex;
  Instance& out = ex.inst;
  out.n = nn;
  out.base = inst.base;
  out.boys.assign(nn + 1, {});
  out.girls.assign(nn + 1, {});
  out.fictitious_boy = inst.fictitious_boy;
  out.fictitious_boy.resize(nn + 1, true);
  out.fictitious_girl.assign(nn + 1, false);
  ex.parent.assign(nn + 1, 0);
  for (GirlId g = 1; g <= n; ++g)
    for (int s = first[g]; s < first[g + 1]; ++s) {
      ex.parent[s] = g;
      out.fictitious_girl[s] = inst.fictitious_girl[g];
    }

  for (BoyId b = 1; b <= n; ++b) {
    for (auto& level : inst.boys[b].levels) {
      if (level.size() == 1) {
        // Singleton levels stay strict: the slots become consecutive ranks.
        for (int s = first[level[0]]; s < first[level[0] + 1]; ++s)
          out.boys[b].levels.push_back({s});
      } else {
        std::vector<GirlId> merged;
        for (GirlId g : level)
          for (int s = first[g]; s < first[g + 1]; ++s) merged.push_back(s);
        out.boys[b].levels.push_back(std::move(merged));
      }
    }
    for (int f = ng + 1; f <= nn; ++f) out.boys[b].levels.push_back({f});
  }
  for (int b = n + 1; b <= nn; ++b) out.boys[b] = ascending_levels(1, nn);

  for (GirlId g = 1; g <= n; ++g)
    for (int s = first[g]; s < first[g + 1]; ++s) {
      out.girls[s] = inst.girls[g];
      for (int b = n + 1; b <= nn; ++b) out.girls[s].push_back(b);
    }
  for (int s = ng + 1; s <= nn; ++s) {
    out.girls[s].resize(nn);
    for (int b = 1; b <= nn; ++b) out.girls[s][b - 1] = b;
  }

  out.validate();
  return ex;
}

Instance add_rejector_boys(const Instance& inst,
                           const std::map<GirlId, int>& placement) {
  const int n = inst.n;
  const int nn = 2 * n;
  for (auto& [g, pos] : placement) {
    if (g < 1 || g > n) throw std::invalid_argument("placement girl out of range");
    if (pos < 1 || pos > nn) throw std::invalid_argument("placement out of range");
  }

  Instance out;
  out.n = nn;
  out.base = inst.base;
  out.boys.assign(nn + 1, {});
  out.girls.assign(nn + 1, {});
  out.fictitious_boy = inst.fictitious_boy;
  out.fictitious_girl = inst.fictitious_girl;
  out.fictitious_boy.resize(nn + 1, true);
  out.fictitious_girl.resize(nn + 1, true);

  for (BoyId b = 1; b <= n; ++b) {
    out.boys[b] = inst.boys[b];
    for (int d = n + 1; d <= nn; ++d) out.boys[b].levels.push_back({d});
  }
  for (GirlId j = 1; j <= n; ++j) {
    // Rejector of girl j: her, then his dump girl, then everything else.
    PreferenceList& p = out.boys[n + j];
    p.levels.push_back({j});
    p.levels.push_back({n + j});
    for (int g = 1; g <= nn; ++g)
      if (g != j && g != n + j) p.levels.push_back({g});
  }

  for (GirlId g = 1; g <= n; ++g) {
    std::vector<BoyId>& list = out.girls[g];
    list = inst.girls[g];
    for (int b = n + 1; b <= nn; ++b) list.push_back(b);
    if (auto it = placement.find(g); it != placement.end()) {
      list.erase(std::find(list.begin(), list.end(), n + g));
      list.insert(list.begin() + (it->second - 1), n + g);
    }
  }
  for (GirlId j = n + 1; j <= nn; ++j) {
    std::vector<BoyId>& list = out.girls[j];
    list.push_back(j);  // her own rejector dumps here, top-ranked
    for (int b = 1; b <= nn; ++b)
      if (b != j) list.push_back(b);
  }

  out.validate();
  return out;
}

}  // namespace smgame
