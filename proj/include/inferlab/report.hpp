#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "inferlab/adversary.hpp"
#include "inferlab/restrictions.hpp"

namespace inferlab {

enum class Expectation { Satisfied, Violated };

struct CellResult {
  std::string language;
  UPSet target;
  std::string informant;
  Restriction restriction = Restriction::Cons;
  Expectation expect = Expectation::Satisfied;
  Verdict verdict;
  bool met = true;

  friend bool operator==(const CellResult&, const CellResult&) = default;
};

enum class AdversaryExpectation { Witness, Exhausted };

struct AdversaryResult {
  std::string id;
  AdversaryExpectation expect = AdversaryExpectation::Exhausted;
  Witness witness;
  bool verified = true;
  bool met = true;

  friend bool operator==(const AdversaryResult&, const AdversaryResult&) = default;
};

struct Report {
  std::string version;
  std::vector<std::uint64_t> seeds;
  std::size_t horizon = 0;
  std::string learner;
  /// "local" or "global (sampled)".
  std::string scope = "local";
  std::vector<CellResult> cells;
  std::vector<AdversaryResult> adversaries;

  bool all_met() const;

  friend bool operator==(const Report&, const Report&) = default;
};

std::string to_string(Expectation e);
Expectation parse_expectation(std::string_view text);
std::string to_string(AdversaryExpectation e);
AdversaryExpectation parse_adversary_expectation(std::string_view text);

}  // namespace inferlab
