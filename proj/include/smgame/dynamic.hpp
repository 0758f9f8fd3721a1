// Simultaneous-rounds play: every uncoupled boy proposes at each step and
// each girl keeps the best of her incumbent and the new arrivals.  Boys can
// follow scripted strategies; play texts record who proposed where and who
// won, and girls' lists can be reconstructed from them.
#pragma once

#include "smgame/core.hpp"
#include "smgame/engine.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace smgame {

// One girl's resolution within a step.  The winner is a proposer who took
// her, or the incumbent who kept her.
struct Contest {
  GirlId girl = 0;
  std::vector<BoyId> proposers;  // ascending
  BoyId winner = 0;

  bool operator==(const Contest&) const = default;
};

struct DynamicStep {
  std::vector<Contest> contests;  // ascending girl id

  bool operator==(const DynamicStep&) const = default;
};

struct ConcurrentTrace {
  Instance inst;
  std::vector<DynamicStep> steps;
  Matching final;

  int proposal_count() const;
};

// Scripted strategies.  Rules are scanned top-down each time the boy must
// propose; a rule whose target he already proposed to is skipped, and a boy
// out of applicable rules continues naively down his own list.
struct Condition {
  enum Kind { Always, StepIs, Holds, WasProposed, And, Or, Not };
  Kind kind = Always;
  int a = 0, b = 0;             // step number, or (boy, girl) ids
  std::vector<Condition> kids;  // operands of And/Or/Not
};

struct ScriptRule {
  Condition when;
  GirlId then_girl = 0;
  GirlId else_girl = 0;  // 0 = no else branch
};

struct Script {
  std::map<BoyId, std::vector<ScriptRule>> rules;
};

// One rule per line: `boy 9: if was_proposed(1, 3) propose 10 else propose 9`.
// Conditions: always, step = K, holds(B, G), was_proposed(B, G), combined
// with and/or/not and parentheses.  was_proposed sees strictly earlier steps
// only; a boy learns nothing about the step he is in.
Script parse_script(std::istream& in, int base = 1);
Script parse_script_text(const std::string& text, int base = 1);

// Runs until no boy is uncoupled.  Deterministic; all-naive (empty script)
// reaches the same final matching as the sequential engine.
ConcurrentTrace run_dynamic(const Instance& inst, const Script& script = {});

// -- play texts --

struct PlayEvent {
  int step = 0;
  GirlId girl = 0;
  std::vector<BoyId> proposers;  // ascending
  BoyId winner = 0;              // annotated victor, else the sole proposer

  bool operator==(const PlayEvent&) const = default;
};

struct Play {
  std::string root;               // name of the first definition
  std::vector<PlayEvent> events;  // sorted by (step, girl)
};

// Grammar (names are definitions, `.` ends one):
//   T(0) = P0; P1.
//   P0(0) = b2 -> g2; b3 -> g3.
//   P1(0) = b1, b4 -> g1(b1) | b4 -> P2.
//   P2(1) = b4 -> g2.
// `;` separates branches sharing the definition's start step, `|` advances
// one step per element.  A reference contributes at its own declared start.
// Multi-proposer elements need the `(victor)` annotation; on a lone proposal
// it marks a refusal by naming the boy who kept the girl.
Play parse_play(std::istream& in, int base = 1);
Play parse_play_text(const std::string& text, int base = 1);
Play parse_play_file(const std::string& path, int base = 1);

Play to_play(const ConcurrentTrace& trace, std::string root = "P");
// A sequential trace read as one proposal per step.
Play play_from_trace(const PlayTrace& trace, std::string root = "P");

std::string format_play(const Play& play, int base = 1);

struct PlayViolation {
  BoyId boy = 0;
  GirlId girl = 0;
  std::vector<int> steps;

  bool operator==(const PlayViolation&) const = default;
};

// A play is realizable by some girls' preference lists iff no boy proposes
// twice to the same girl; the violations name each offending pair.
std::vector<PlayViolation> validate_play(const Play& play);
bool plausible(const Play& play);

// Girls' lists (over boys 1..n) under which every recorded win is correct:
// each winner is ranked above everyone he beat, ties resolved by putting
// accepted boys first, then refused ones, then silent ones, ascending id
// within a group.  Throws std::invalid_argument when a winner was neither a
// proposer nor the incumbent, std::logic_error when the wins contradict
// each other (impossible for a plausible single play).
std::vector<std::vector<BoyId>> reconstruct_preferences(
    const std::vector<Play>& plays, int n);

// Boys' lists read off the play: proposal order, completed ascending.
std::vector<PreferenceList> inferred_boy_lists(const Play& play, int n);

// Checks each contest against inst's girls; throws std::invalid_argument on
// the first disagreement.
void replay_play(const Instance& inst, const Play& play);

}  // namespace smgame
