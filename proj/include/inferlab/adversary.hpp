#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "inferlab/interaction.hpp"
#include "inferlab/restrictions.hpp"

namespace inferlab {

struct Bounds {
  /// Largest index searched for a stabilized conjecture.
  std::size_t n_bound = 100;
  /// Extra steps searched after a stage switch, and the mind-change probe depth.
  std::size_t t_bound = 50;
  std::size_t max_rounds = 10;

  friend bool operator==(const Bounds&, const Bounds&) = default;
};

enum class WitnessKind { RestrictionViolation, MindchangeTranscript, SplitPair, Exhausted };

std::string to_string(WitnessKind kind);
WitnessKind parse_witness_kind(std::string_view text);

/// One step of the mind-change game: from `before` the opponent changed its
/// label on `after` = content of the canonical informant for
/// pos(before) u {p} cut at p + t.
struct MindchangeRound {
  DataSet before;
  Natural p = 0;
  unsigned b = 0;
  std::size_t t = 0;
  DataSet after;
  Label label_before = 0;
  Label label_after = 0;

  friend bool operator==(const MindchangeRound&, const MindchangeRound&) = default;
};

struct Witness {
  WitnessKind kind = WitnessKind::Exhausted;
  std::string adversary;
  std::string opponent;
  Bounds bounds;
  /// Game parameters: n0, n_X, n, n_Y, m, n_Z, element, x, ...
  std::map<std::string, Natural> params;

  // RestrictionViolation: the run of the opponent on
  // Informant::with_head(target, head) violates `restriction` at (s, t).
  Restriction restriction = Restriction::Cons;
  UPSet target;
  std::vector<Natural> head;
  std::size_t s = 0;
  std::size_t t = 0;
  std::vector<UPSet> conjectures;

  // MindchangeTranscript.
  std::vector<MindchangeRound> rounds;

  // SplitPair: all probes from `base` toward `first` and `second` return `label`.
  DataSet base;
  UPSet first;
  UPSet second;
  Label label = 0;

  std::string note;

  friend bool operator==(const Witness&, const Witness&) = default;
};

/// CautTar, CautInf or Caut against N and N \ {n0 + 1}.
Witness caut_adversary(Restriction variant, const Learner& opponent, const Bounds& bounds = {});
/// N first, then the finite set pos(I_N[n0]).
Witness cautfin_adversary(const Learner& opponent, const Bounds& bounds = {});

enum class MonotonicityGame { SMonVsDual, DualVsSMon, MonVsDual, DualVsMon };

Witness monotonicity_adversary(MonotonicityGame game, const Learner& opponent, const Bounds& bounds = {});

/// Builds D_0 = {}, D_1, ... by forcing syntactic mind changes with fresh
/// numbers beyond the outline. Sd opponents only.
Witness mindchange_driver(const Learner& opponent, const Bounds& bounds = {});

/// `caut_tar, caut_inf, caut, caut_fin, smon_vs_dual, dual_vs_smon,
/// mon_vs_dual, dual_vs_mon, mindchange`
const std::vector<std::string>& adversary_ids();
Witness run_adversary(std::string_view id, const Learner& opponent, const Bounds& bounds = {});

/// Replays the witness against `opponent`; exhausted witnesses pass.
bool verify_witness(const Witness& w, const Learner& opponent);

}  // namespace inferlab
