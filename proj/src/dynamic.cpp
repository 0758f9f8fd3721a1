#include "smgame/dynamic.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace smgame {

namespace {

std::string strip(std::string s) {
  auto notspace = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
  s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
  return s;
}

int to_internal(long raw, int base, int line, const char* what) {
  long id = raw - base + 1;
  if (id < 1) throw ParseError(line, std::string("bad ") + what + " id");
  return (int)id;
}

// ---- script files ----

struct RuleLexer {
  std::string s;
  size_t i = 0;
  int line;

  void skip() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
  }
  bool done() {
    skip();
    return i >= s.size();
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) throw ParseError(line, std::string("expected '") + c + "'");
  }
  std::string word() {
    skip();
    size_t j = i;
    while (i < s.size() &&
           (std::isalnum((unsigned char)s[i]) || s[i] == '_'))
      ++i;
    return s.substr(j, i - j);
  }
  std::string peek_word() {
    size_t save = i;
    std::string w = word();
    i = save;
    return w;
  }
  long number() {
    std::string w = word();
    if (w.empty() || !std::all_of(w.begin(), w.end(), [](unsigned char c) {
          return std::isdigit(c);
        }))
      throw ParseError(line, "expected a number, got '" + w + "'");
    return std::stol(w);
  }
};

Condition parse_or(RuleLexer& lx, int base);

Condition parse_atom(RuleLexer& lx, int base) {
  if (lx.peek_word() == "not") {
    lx.word();
    Condition c;
    c.kind = Condition::Not;
    c.kids.push_back(parse_atom(lx, base));
    return c;
  }
  if (lx.eat('(')) {
    Condition c = parse_or(lx, base);
    lx.expect(')');
    return c;
  }
  std::string w = lx.word();
  Condition c;
  if (w == "always") return c;
  if (w == "step") {
    lx.expect('=');
    c.kind = Condition::StepIs;
    c.a = (int)lx.number();
    return c;
  }
  if (w == "holds" || w == "was_proposed") {
    c.kind = w == "holds" ? Condition::Holds : Condition::WasProposed;
    lx.expect('(');
    c.a = to_internal(lx.number(), base, lx.line, "boy");
    lx.expect(',');
    c.b = to_internal(lx.number(), base, lx.line, "girl");
    lx.expect(')');
    return c;
  }
  throw ParseError(lx.line, "unknown condition '" + w + "'");
}

Condition parse_and(RuleLexer& lx, int base) {
  Condition c = parse_atom(lx, base);
  while (lx.peek_word() == "and") {
    lx.word();
    if (c.kind != Condition::And || c.kids.empty()) {
      Condition top;
      top.kind = Condition::And;
      top.kids.push_back(std::move(c));
      c = std::move(top);
    }
    c.kids.push_back(parse_atom(lx, base));
  }
  return c;
}

Condition parse_or(RuleLexer& lx, int base) {
  Condition c = parse_and(lx, base);
  while (lx.peek_word() == "or") {
    lx.word();
    if (c.kind != Condition::Or || c.kids.empty()) {
      Condition top;
      top.kind = Condition::Or;
      top.kids.push_back(std::move(c));
      c = std::move(top);
    }
    c.kids.push_back(parse_and(lx, base));
  }
  return c;
}

bool eval(const Condition& c, int step, const Matching& cur,
          const std::vector<std::vector<bool>>& proposed) {
  switch (c.kind) {
    case Condition::Always:
      return true;
    case Condition::StepIs:
      return step == c.a;
    case Condition::Holds:
      return c.a < (int)cur.girl_of.size() && cur.girl_of[c.a] == c.b;
    case Condition::WasProposed:
      return c.a < (int)proposed.size() &&
             c.b < (int)proposed[c.a].size() && proposed[c.a][c.b];
    case Condition::And:
      return std::all_of(c.kids.begin(), c.kids.end(), [&](const Condition& k) {
        return eval(k, step, cur, proposed);
      });
    case Condition::Or:
      return std::any_of(c.kids.begin(), c.kids.end(), [&](const Condition& k) {
        return eval(k, step, cur, proposed);
      });
    case Condition::Not:
      return !eval(c.kids[0], step, cur, proposed);
  }
  return false;
}

// ---- play texts ----

struct PTok {
  enum Kind { Name, Num, LPar, RPar, Eq, Comma, Semi, Bar, Dot, Arrow, End };
  Kind kind;
  std::string text;
  long num = 0;
  int line = 0;
};

std::vector<PTok> lex_play(const std::string& raw) {
  std::vector<PTok> out;
  int line = 1;
  size_t i = 0;
  bool comment = false;
  while (i < raw.size()) {
    char c = raw[i];
    if (c == '\n') {
      ++line;
      comment = false;
      ++i;
      continue;
    }
    if (comment || c == '#') {
      comment = true;
      ++i;
      continue;
    }
    if (std::isspace((unsigned char)c)) {
      ++i;
      continue;
    }
    // UTF-8 arrow
    if ((unsigned char)c == 0xE2 && i + 2 < raw.size() &&
        (unsigned char)raw[i + 1] == 0x86 && (unsigned char)raw[i + 2] == 0x92) {
      out.push_back({PTok::Arrow, "->", 0, line});
      i += 3;
      continue;
    }
    if (c == '-' && i + 1 < raw.size() && raw[i + 1] == '>') {
      out.push_back({PTok::Arrow, "->", 0, line});
      i += 2;
      continue;
    }
    if (std::isdigit((unsigned char)c)) {
      size_t j = i;
      while (i < raw.size() && std::isdigit((unsigned char)raw[i])) ++i;
      out.push_back({PTok::Num, raw.substr(j, i - j),
                     std::stol(raw.substr(j, i - j)), line});
      continue;
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t j = i;
      while (i < raw.size() &&
             (std::isalnum((unsigned char)raw[i]) || raw[i] == '_'))
        ++i;
      out.push_back({PTok::Name, raw.substr(j, i - j), 0, line});
      continue;
    }
    PTok::Kind k;
    switch (c) {
      case '(': k = PTok::LPar; break;
      case ')': k = PTok::RPar; break;
      case '=': k = PTok::Eq; break;
      case ',': k = PTok::Comma; break;
      case ';': k = PTok::Semi; break;
      case '|': k = PTok::Bar; break;
      case '.': k = PTok::Dot; break;
      default:
        throw ParseError(line, std::string("stray character '") + c + "'");
    }
    out.push_back({k, std::string(1, c), 0, line});
    ++i;
  }
  out.push_back({PTok::End, "", 0, line});
  return out;
}

bool id_token(const std::string& w, char prefix) {
  return w.size() >= 2 && w[0] == prefix &&
         std::all_of(w.begin() + 1, w.end(),
                     [](unsigned char c) { return std::isdigit(c); });
}

int id_value(const std::string& w, int base, int line, const char* what) {
  return to_internal(std::stol(w.substr(1)), base, line, what);
}

struct PendingEvent {
  int step;
  GirlId girl;
  std::vector<BoyId> proposers;
  BoyId stated = 0;  // annotated victor, 0 if none
  int line;
};

}  // namespace

int ConcurrentTrace::proposal_count() const {
  int total = 0;
  for (auto& s : steps)
    for (auto& c : s.contests) total += (int)c.proposers.size();
  return total;
}

Script parse_script(std::istream& in, int base) {
  Script sc;
  std::string raw;
  int ln = 0;
  while (std::getline(in, raw)) {
    ++ln;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    raw = strip(raw);
    if (raw.empty()) continue;
    RuleLexer lx{raw, 0, ln};
    if (lx.word() != "boy") throw ParseError(ln, "expected 'boy I: rule'");
    BoyId b = to_internal(lx.number(), base, ln, "boy");
    lx.expect(':');
    ScriptRule rule;
    if (lx.peek_word() == "if") {
      lx.word();
      rule.when = parse_or(lx, base);
      if (lx.word() != "propose") throw ParseError(ln, "expected 'propose'");
      rule.then_girl = to_internal(lx.number(), base, ln, "girl");
      if (!lx.done()) {
        if (lx.word() != "else") throw ParseError(ln, "expected 'else'");
        if (lx.word() != "propose") throw ParseError(ln, "expected 'propose'");
        rule.else_girl = to_internal(lx.number(), base, ln, "girl");
      }
    } else {
      if (lx.word() != "propose") throw ParseError(ln, "expected 'propose'");
      rule.then_girl = to_internal(lx.number(), base, ln, "girl");
    }
    if (!lx.done()) throw ParseError(ln, "trailing text in rule");
    sc.rules[b].push_back(std::move(rule));
  }
  return sc;
}

Script parse_script_text(const std::string& text, int base) {
  std::istringstream in(text);
  return parse_script(in, base);
}

ConcurrentTrace run_dynamic(const Instance& inst, const Script& script) {
  const int n = inst.n;
  for (auto& [b, rules] : script.rules) {
    if (b < 1 || b > n)
      throw std::invalid_argument("script names a boy out of range");
    for (auto& r : rules)
      if (r.then_girl < 1 || r.then_girl > n || r.else_girl < 0 ||
          r.else_girl > n)
        throw std::invalid_argument("script names a girl out of range");
  }

  ConcurrentTrace tr;
  tr.inst = inst;
  Matching cur(n);
  std::vector<std::vector<bool>> proposed(n + 1,
                                          std::vector<bool>(n + 1, false));
  auto naive = naive_profiles(inst);

  for (int step = 0;; ++step) {
    std::vector<std::pair<BoyId, GirlId>> picks;
    for (BoyId b = 1; b <= n; ++b) {
      if (cur.girl_of[b]) continue;
      GirlId g = 0;
      if (auto it = script.rules.find(b); it != script.rules.end()) {
        for (auto& r : it->second) {
          GirlId t = eval(r.when, step, cur, proposed) ? r.then_girl
                                                       : r.else_girl;
          if (t && !proposed[b][t]) {
            g = t;
            break;
          }
        }
      }
      if (!g)
        for (GirlId cand : naive[b])
          if (!proposed[b][cand]) {
            g = cand;
            break;
          }
      if (!g)
        throw std::runtime_error("boy " + std::to_string(b - 1 + inst.base) +
                                 " ran out of proposals");
      picks.emplace_back(b, g);
    }
    if (picks.empty()) break;

    DynamicStep ds;
    // Resolve every contest against start-of-step holdings only.
    std::map<GirlId, std::vector<BoyId>> by_girl;
    for (auto& [b, g] : picks) by_girl[g].push_back(b);
    for (auto& [g, props] : by_girl) {
      BoyId best = cur.boy_of[g];
      for (BoyId b : props)
        if (!best || inst.girl_prefers(g, b, best)) best = b;
      ds.contests.push_back({g, props, best});
    }
    for (auto& c : ds.contests) {
      for (BoyId b : c.proposers) proposed[b][c.girl] = true;
      if (c.winner != cur.boy_of[c.girl]) cur.couple(c.winner, c.girl);
    }
    tr.steps.push_back(std::move(ds));
  }
  tr.final = cur;
  return tr;
}

Play parse_play(std::istream& in, int base) {
  std::string raw((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  auto toks = lex_play(raw);
  size_t i = 0;
  auto peek = [&]() -> const PTok& { return toks[i]; };
  auto next = [&]() -> const PTok& { return toks[i++]; };
  auto expect = [&](PTok::Kind k, const char* what) -> const PTok& {
    if (toks[i].kind != k)
      throw ParseError(toks[i].line, std::string("expected ") + what);
    return toks[i++];
  };

  Play play;
  std::vector<PendingEvent> pending;
  std::set<std::string> defined, referenced;

  while (peek().kind != PTok::End) {
    const PTok& name = expect(PTok::Name, "a play name");
    if (id_token(name.text, 'b') || id_token(name.text, 'g'))
      throw ParseError(name.line, "play name looks like a participant id");
    if (!defined.insert(name.text).second)
      throw ParseError(name.line, "play '" + name.text + "' defined twice");
    if (play.root.empty()) play.root = name.text;
    expect(PTok::LPar, "'('");
    int start = (int)expect(PTok::Num, "a start step").num;
    expect(PTok::RPar, "')'");
    expect(PTok::Eq, "'='");

    int offset = 0;  // element index within the current branch
    while (true) {
      // One item: a bare reference, or boys -> target.
      if (peek().kind == PTok::Name && toks[i + 1].kind != PTok::Arrow &&
          toks[i + 1].kind != PTok::Comma) {
        const PTok& ref = next();
        if (id_token(ref.text, 'b') || id_token(ref.text, 'g'))
          throw ParseError(ref.line, "a lone participant is not a play");
        referenced.insert(ref.text);
      } else {
        std::vector<BoyId> boys;
        while (true) {
          const PTok& b = expect(PTok::Name, "a boy id");
          if (!id_token(b.text, 'b'))
            throw ParseError(b.line, "'" + b.text + "' is not a boy id");
          boys.push_back(id_value(b.text, base, b.line, "boy"));
          if (peek().kind == PTok::Comma)
            ++i;
          else
            break;
        }
        expect(PTok::Arrow, "'->'");
        const PTok& target = expect(PTok::Name, "a girl or play name");
        if (id_token(target.text, 'g')) {
          PendingEvent ev;
          ev.step = start + offset;
          ev.girl = id_value(target.text, base, target.line, "girl");
          std::sort(boys.begin(), boys.end());
          if (std::adjacent_find(boys.begin(), boys.end()) != boys.end())
            throw ParseError(target.line, "a boy listed twice in one element");
          ev.proposers = std::move(boys);
          ev.line = target.line;
          if (peek().kind == PTok::LPar) {
            ++i;
            const PTok& v = expect(PTok::Name, "a victor boy id");
            if (!id_token(v.text, 'b'))
              throw ParseError(v.line, "victor must be a boy id");
            ev.stated = id_value(v.text, base, v.line, "boy");
            expect(PTok::RPar, "')'");
          }
          pending.push_back(std::move(ev));
        } else {
          if (boys.size() != 1)
            throw ParseError(target.line,
                             "only one boy may continue into a play");
          referenced.insert(target.text);
        }
      }
      if (peek().kind == PTok::Bar) {
        ++i;
        ++offset;
        continue;
      }
      if (peek().kind == PTok::Semi) {
        ++i;
        offset = 0;
        continue;
      }
      expect(PTok::Dot, "'.' at the end of a definition");
      break;
    }
  }

  for (auto& name : referenced)
    if (!defined.count(name))
      throw ParseError(0, "reference to undefined play '" + name + "'");

  // Merge same-step same-girl elements, then fix winners.
  std::map<std::pair<int, GirlId>, PendingEvent> merged;
  for (auto& ev : pending) {
    auto key = std::make_pair(ev.step, ev.girl);
    auto [it, fresh] = merged.try_emplace(key, ev);
    if (!fresh) {
      auto& dst = it->second;
      for (BoyId b : ev.proposers) dst.proposers.push_back(b);
      std::sort(dst.proposers.begin(), dst.proposers.end());
      dst.proposers.erase(
          std::unique(dst.proposers.begin(), dst.proposers.end()),
          dst.proposers.end());
      if (ev.stated) {
        if (dst.stated && dst.stated != ev.stated)
          throw ParseError(ev.line, "conflicting victors for one contest");
        dst.stated = ev.stated;
      }
    }
  }
  for (auto& [key, ev] : merged) {
    (void)key;
    PlayEvent out;
    out.step = ev.step;
    out.girl = ev.girl;
    out.proposers = ev.proposers;
    if (ev.stated)
      out.winner = ev.stated;
    else if (ev.proposers.size() == 1)
      out.winner = ev.proposers[0];
    else
      throw ParseError(ev.line, "contested proposal needs a victor annotation");
    play.events.push_back(std::move(out));
  }
  return play;
}

Play parse_play_text(const std::string& text, int base) {
  std::istringstream in(text);
  return parse_play(in, base);
}

Play parse_play_file(const std::string& path, int base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_play(in, base);
}

Play to_play(const ConcurrentTrace& trace, std::string root) {
  Play play;
  play.root = std::move(root);
  for (int step = 0; step < (int)trace.steps.size(); ++step)
    for (auto& c : trace.steps[step].contests)
      play.events.push_back({step, c.girl, c.proposers, c.winner});
  return play;
}

Play play_from_trace(const PlayTrace& trace, std::string root) {
  Play play;
  play.root = std::move(root);
  for (int k = 0; k < (int)trace.elements.size(); ++k) {
    const PlayElement& el = trace.elements[k];
    play.events.push_back({k, el.girl, {el.boy}, el.victor});
  }
  return play;
}

std::string format_play(const Play& play, int base) {
  std::map<int, std::vector<const PlayEvent*>> by_step;
  for (auto& ev : play.events) by_step[ev.step].push_back(&ev);
  std::string root = play.root.empty() ? "P" : play.root;
  std::ostringstream out;
  out << root << "(" << (by_step.empty() ? 0 : by_step.begin()->first)
      << ") =";
  bool first = true;
  for (auto& [step, evs] : by_step) {
    (void)evs;
    out << (first ? " " : "; ") << root << "_" << step;
    first = false;
  }
  out << ".\n";
  auto boy = [&](BoyId b) { return "b" + std::to_string(b - 1 + base); };
  for (auto& [step, evs] : by_step) {
    out << root << "_" << step << "(" << step << ") =";
    bool lead = true;
    for (const PlayEvent* ev : evs) {
      out << (lead ? " " : "; ");
      lead = false;
      for (size_t k = 0; k < ev->proposers.size(); ++k)
        out << (k ? ", " : "") << boy(ev->proposers[k]);
      out << " -> g" << (ev->girl - 1 + base);
      if (ev->proposers.size() > 1 || ev->winner != ev->proposers[0])
        out << "(" << boy(ev->winner) << ")";
    }
    out << ".\n";
  }
  return out.str();
}

std::vector<PlayViolation> validate_play(const Play& play) {
  std::map<std::pair<BoyId, GirlId>, std::vector<int>> hits;
  for (auto& ev : play.events)
    for (BoyId b : ev.proposers) hits[{b, ev.girl}].push_back(ev.step);
  std::vector<PlayViolation> out;
  for (auto& [key, steps] : hits)
    if (steps.size() > 1) out.push_back({key.first, key.second, steps});
  return out;
}

bool plausible(const Play& play) { return validate_play(play).empty(); }

namespace {

// Calls fn(event, incumbent) in step order, incumbents frozen per step,
// then applies the recorded winners.
template <class F>
void walk_play(const Play& play, int n, F&& fn) {
  for (auto& ev : play.events) {
    if (ev.girl < 1 || ev.girl > n || ev.winner < 1 || ev.winner > n)
      throw std::invalid_argument("play names ids beyond the instance");
    for (BoyId b : ev.proposers)
      if (b < 1 || b > n)
        throw std::invalid_argument("play names ids beyond the instance");
  }
  auto events = play.events;
  std::sort(events.begin(), events.end(),
            [](const PlayEvent& a, const PlayEvent& b) {
              return std::tie(a.step, a.girl) < std::tie(b.step, b.girl);
            });
  Matching cur(n);
  size_t i = 0;
  while (i < events.size()) {
    size_t j = i;
    while (j < events.size() && events[j].step == events[i].step) ++j;
    std::vector<BoyId> incumbent(j - i);
    for (size_t k = i; k < j; ++k) incumbent[k - i] = cur.boy_of[events[k].girl];
    for (size_t k = i; k < j; ++k) fn(events[k], incumbent[k - i]);
    for (size_t k = i; k < j; ++k)
      if (events[k].winner != incumbent[k - i])
        cur.couple(events[k].winner, events[k].girl);
    i = j;
  }
}

}  // namespace

std::vector<std::vector<BoyId>> reconstruct_preferences(
    const std::vector<Play>& plays, int n) {
  std::vector<std::vector<std::vector<bool>>> beats(
      n + 1, std::vector<std::vector<bool>>(n + 1,
                                            std::vector<bool>(n + 1, false)));
  std::vector<std::vector<bool>> accepted(n + 1,
                                          std::vector<bool>(n + 1, false));
  std::vector<std::vector<bool>> courted(n + 1,
                                         std::vector<bool>(n + 1, false));

  for (auto& play : plays) {
    walk_play(play, n, [&](const PlayEvent& ev, BoyId incumbent) {
      std::vector<BoyId> field = ev.proposers;
      if (incumbent &&
          std::find(field.begin(), field.end(), incumbent) == field.end())
        field.push_back(incumbent);
      if (std::find(field.begin(), field.end(), ev.winner) == field.end())
        throw std::invalid_argument(
            "step " + std::to_string(ev.step) +
            ": the recorded winner neither proposed nor held the girl");
      accepted[ev.girl][ev.winner] = true;
      for (BoyId b : ev.proposers) courted[ev.girl][b] = true;
      for (BoyId x : field)
        if (x != ev.winner) beats[ev.girl][ev.winner][x] = true;
    });
  }

  std::vector<std::vector<BoyId>> lists(n + 1);
  for (GirlId g = 1; g <= n; ++g) {
    std::vector<int> indeg(n + 1, 0);
    for (BoyId w = 1; w <= n; ++w)
      for (BoyId x = 1; x <= n; ++x)
        if (beats[g][w][x]) ++indeg[x];
    auto group = [&](BoyId b) {
      return accepted[g][b] ? 0 : courted[g][b] ? 1 : 2;
    };
    // Available boys, most-preferred class first, then ascending id.
    std::set<std::pair<int, BoyId>> ready;
    for (BoyId b = 1; b <= n; ++b)
      if (indeg[b] == 0) ready.insert({group(b), b});
    auto& list = lists[g];
    while (!ready.empty()) {
      BoyId b = ready.begin()->second;
      ready.erase(ready.begin());
      list.push_back(b);
      for (BoyId x = 1; x <= n; ++x)
        if (beats[g][b][x] && --indeg[x] == 0) ready.insert({group(x), x});
    }
    if ((int)list.size() != n)
      throw std::logic_error("the recorded wins at g" + std::to_string(g) +
                             " contradict each other");
  }
  return lists;
}

std::vector<PreferenceList> inferred_boy_lists(const Play& play, int n) {
  std::vector<std::vector<GirlId>> order(n + 1);
  std::vector<std::vector<bool>> seen(n + 1, std::vector<bool>(n + 1, false));
  auto events = play.events;
  std::sort(events.begin(), events.end(),
            [](const PlayEvent& a, const PlayEvent& b) {
              return std::tie(a.step, a.girl) < std::tie(b.step, b.girl);
            });
  for (auto& ev : events)
    for (BoyId b : ev.proposers) {
      if (b < 1 || b > n || ev.girl < 1 || ev.girl > n)
        throw std::invalid_argument("play names ids beyond the instance");
      if (!seen[b][ev.girl]) {
        seen[b][ev.girl] = true;
        order[b].push_back(ev.girl);
      }
    }
  std::vector<PreferenceList> out(n + 1);
  for (BoyId b = 1; b <= n; ++b) {
    for (GirlId g = 1; g <= n; ++g)
      if (!seen[b][g]) order[b].push_back(g);
    for (GirlId g : order[b]) out[b].levels.push_back({g});
  }
  return out;
}

void replay_play(const Instance& inst, const Play& play) {
  walk_play(play, inst.n, [&](const PlayEvent& ev, BoyId incumbent) {
    BoyId best = incumbent;
    for (BoyId b : ev.proposers)
      if (!best || inst.girl_prefers(ev.girl, b, best)) best = b;
    if (best != ev.winner)
      throw std::invalid_argument(
          "step " + std::to_string(ev.step) + ": g" +
          std::to_string(ev.girl - 1 + inst.base) + " would choose b" +
          std::to_string(best - 1 + inst.base) + ", the play says b" +
          std::to_string(ev.winner - 1 + inst.base));
  });
}

}  // namespace smgame
