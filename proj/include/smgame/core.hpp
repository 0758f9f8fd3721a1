// Core data model: marriage instances, preference lists, matchings,
// the instance file format, and instance generators.
//
// Conventions used throughout the library:
//   - ids are 1-based; vectors indexed by id leave slot 0 unused
//   - parsed instances are always square (fictitious padding), n boys, n girls
//   - `base` records how ids are rendered in files (b0/g0 vs b1/g1); it never
//     affects internal ids
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace smgame {

using BoyId = int;
using GirlId = int;

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what_),
        line(line_) {}
};

// Ordered tie-groups; flattened order = proposal order. Girls' lists are
// strict, so they are stored as plain vectors elsewhere; PreferenceList is
// boy-side only.
struct PreferenceList {
  std::vector<std::vector<GirlId>> levels;

  bool operator==(const PreferenceList&) const = default;

  bool has_ties() const;
  int size() const;
  // Ties broken by ascending id.
  std::vector<GirlId> flatten() const;
  // Ties broken by position in `order` (a ranking over all girl ids).
  std::vector<GirlId> flatten(const std::vector<GirlId>& order) const;
};

struct Instance {
  int n = 0;     // boys == girls after padding
  int base = 1;  // id base used when rendering (0 or 1)
  std::vector<PreferenceList> boys;        // [boy id]
  std::vector<std::vector<BoyId>> girls;   // [girl id], strict
  std::vector<bool> fictitious_boy;        // [boy id]
  std::vector<bool> fictitious_girl;       // [girl id]

  int real_boys() const;
  int real_girls() const;

  // rank 0 = most preferred. boy_rank uses the ascending-id flattening.
  const std::vector<std::vector<int>>& girl_rank() const;
  const std::vector<std::vector<int>>& boy_rank() const;
  // Tie-group index of g in b's list (0 = top group).
  int boy_level(BoyId b, GirlId g) const;
  bool girl_prefers(GirlId g, BoyId a, BoyId b) const;

  void validate() const;  // throws std::logic_error on broken invariants

 private:
  mutable std::vector<std::vector<int>> girl_rank_;
  mutable std::vector<std::vector<int>> boy_rank_;
  mutable std::vector<std::vector<int>> boy_level_;
};

// Compares the declared data, not the lazily built rank caches.
bool operator==(const Instance& a, const Instance& b);

// girl_of[b] / boy_of[g], 0 = unmatched. Kept symmetric by couple().
struct Matching {
  std::vector<GirlId> girl_of;
  std::vector<BoyId> boy_of;

  Matching() = default;
  explicit Matching(int n);

  int n() const { return (int)girl_of.size() - 1; }
  void couple(BoyId b, GirlId g);
  void uncouple_boy(BoyId b);
  bool complete() const;
  bool operator==(const Matching&) const = default;

  // Restriction to inst's real, in-range participants; pairs touching
  // fictitious or out-of-range ids are dropped.
  Matching project(const Instance& inst) const;
};

struct BlockingPair {
  BoyId boy;
  GirlId girl;
  bool operator==(const BlockingPair&) const = default;
};

// Every (b, g) where b strictly prefers g to his partner (by tie-group) and
// g strictly prefers b to hers. Throws std::invalid_argument if m is not a
// complete matching over the real participants.
std::vector<BlockingPair> blocking_pairs(const Instance& inst, const Matching& m);
bool is_stable(const Instance& inst, const Matching& m);

// Per-boy thresholds for the threat queries: ult is the girl he insists on
// reaching, bottom the worst he will accept while covering for the group.
// Defaults (when the file omits the directives): both are his last preference.
struct AugmentedInstance {
  Instance inst;
  std::vector<GirlId> ult;     // [boy id]
  std::vector<GirlId> bottom;  // [boy id]

  bool operator==(const AugmentedInstance&) const = default;
};

AugmentedInstance default_augmented(const Instance& inst);

// Bid-market extension (money is integral).
struct BidExtension {
  std::vector<int64_t> budget;                // [girl id]
  std::vector<std::vector<int64_t>> reserve;  // [boy id][girl id]
  std::vector<std::vector<int64_t>> quality;  // [girl id][boy id]
  std::vector<int64_t> lambda;                // [girl id]

  bool operator==(const BidExtension&) const = default;
};

struct ParsedFile {
  Instance inst;
  std::optional<AugmentedInstance> aug;  // present iff ult/bottom lines appear
  std::map<GirlId, int> slots;           // girls with declared capacity > 1
  std::optional<BidExtension> bid;       // present iff any bid directive appears
};

// Builds a square instance from 1-indexed lists (slot 0 ignored). Both sides
// must already have the same size; no fictitious padding is applied.
Instance make_instance(std::vector<PreferenceList> boys,
                       std::vector<std::vector<BoyId>> girls, int base = 1);

ParsedFile parse_instance(std::istream& in);
ParsedFile parse_instance_text(const std::string& text);
ParsedFile parse_instance_file(const std::string& path);

// Round-trip stable: parsing the output reproduces the same ParsedFile.
std::string write_instance(const ParsedFile& pf);

// "bI gJ" lines, ascending boy id, real-real pairs only, base-aware.
std::string format_matching(const Instance& inst, const Matching& m);
Matching parse_matching(const Instance& inst, std::istream& in);

// Deterministic cross-platform generator (splitmix64 + Fisher-Yates),
// documented in the README. Boys' lists are drawn first (b1..bn), then girls'.
uint64_t splitmix64(uint64_t& state);
ParsedFile gen_random(int n, uint64_t seed);

// The quadratic-play construction: boy n's opening round walks the whole
// instance, for a total proposal count of n^2 - n + 1 under naive play.
ParsedFile gen_inferno(int n);

}  // namespace smgame
