#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "inferlab/evidence.hpp"
#include "inferlab/upset.hpp"

namespace inferlab {

/// Syntactic identity of a conjecture. Distinct labels may denote equal sets.
using Label = std::uint64_t;

/// Reserved for the initial conjecture of an iterative learner.
inline constexpr Label kEmptyConjectureLabel = 0;

/// Deterministic label for a program described by `program_text` (FNV-1a,
/// never the reserved value). Equal descriptions give equal labels.
Label program_label(std::string_view program_text);

/// Stand-in for the step-count measure: x is enumerated by stage t iff
/// x <= t and delay(x) <= t. The default is max(x, slope*x + offset);
/// `overrides` replace individual values.
struct DelaySchedule {
  Natural slope = 1;
  Natural offset = 0;
  std::map<Natural, Natural> overrides;

  Natural operator()(Natural x) const;

  /// `a,b` or `a,b;x->t,...`
  std::string to_string() const;
  static DelaySchedule parse(std::string_view text);

  friend bool operator==(const DelaySchedule&, const DelaySchedule&) = default;
};

struct Hypothesis {
  Label label = kEmptyConjectureLabel;
  UPSet extension;
  DelaySchedule delay;

  /// `label=K ext=P|Q delay=a,b[;x->t,...]`
  std::string to_string() const;
  static Hypothesis parse(std::string_view text);

  friend bool operator==(const Hypothesis&, const Hypothesis&) = default;
};

inline Hypothesis make_hypothesis(Label label, UPSet extension) {
  return Hypothesis{label, std::move(extension), {}};
}

/// The empty conjecture an iterative learner starts from.
inline Hypothesis empty_conjecture() { return make_hypothesis(kEmptyConjectureLabel, UPSet::empty()); }

/// Finite stage t of the enumeration: {x in extension : x <= t, delay(x) <= t}.
FiniteSet stage_enumerate(const Hypothesis& h, Natural t);

bool consistent(const UPSet& s, const FiniteSet& positives, const FiniteSet& negatives);
bool consistent(const UPSet& s, const DataSequence& d);
bool consistent(const UPSet& s, const DataSet& d);
bool consistent(const FiniteSet& s, const DataSequence& d);
bool consistent(const FiniteSet& s, const DataSet& d);

/// Equal extensions; labels and delays are ignored.
bool sem_equiv(const Hypothesis& a, const Hypothesis& b);

/// Same label and extension with a new schedule. Throws std::invalid_argument
/// for an override below x, an override on a non-member, or slope 0.
Hypothesis with_delay(const Hypothesis& h, std::map<Natural, Natural> overrides, Natural slope = 1,
                      Natural offset = 0);

}  // namespace inferlab
