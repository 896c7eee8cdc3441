#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "inferlab/interaction.hpp"

namespace inferlab {

enum class Restriction {
  Cons,
  SMon,
  SMonDual,
  SMonBoth,
  Mon,
  MonDual,
  MonBoth,
  WMon,
  WMonDual,
  WMonBoth,
  Caut,
  CautTar,
  CautFin,
  CautInf,
  Bc,
  Ex,
};

/// `cons, smon, smon_d, smon_b, mon, mon_d, mon_b, wmon, wmon_d, wmon_b, caut,
/// caut_tar, caut_fin, caut_inf, bc, ex`
std::string to_string(Restriction r);
Restriction parse_restriction(std::string_view id);
const std::vector<Restriction>& all_restrictions();

bool is_monotone(Restriction r);
bool is_cautious(Restriction r);
bool is_convergence(Restriction r);

/// Outcome of one check over a finite horizon.
///
/// For a violation, `s`/`t` locate it (minimal t, then minimal s; Cons and
/// CautTar use s = t = the offending index; a failed Bc/Ex uses the last
/// index). For satisfied Bc/Ex, `stabilization` is the minimal n*.
struct Verdict {
  Restriction restriction = Restriction::Cons;
  bool satisfied = true;
  std::optional<std::size_t> s;
  std::optional<std::size_t> t;
  std::optional<std::size_t> stabilization;
  std::string relation;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

Verdict check_cons(const HypSequence& p, const Informant& I);
/// `variant` must be one of the nine monotonicity restrictions.
Verdict check_monotone(Restriction variant, const HypSequence& p, const Informant& I);
/// `variant` must be Caut, CautTar, CautFin or CautInf.
Verdict check_cautious(Restriction variant, const HypSequence& p, const Informant& I);
Verdict check_bc(const HypSequence& p, const UPSet& target);
/// The final label has to repeat at least once inside the horizon
/// (n* <= horizon - 2); a label seen only at the last index is no evidence of
/// syntactic convergence.
Verdict check_ex(const HypSequence& p, const UPSet& target);

Verdict check(Restriction r, const HypSequence& p, const Informant& I);

/// Re-evaluates the defining relation at the verdict's indices. A violated
/// verdict passes iff the violation reproduces there; a satisfied one passes
/// iff a full re-check is satisfied too.
bool revalidate(const Verdict& v, const HypSequence& p, const Informant& I);

/// Raised when a probe's precondition does not hold.
class ProbeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ProbeResult {
  Verdict original;
  Verdict transformed;
  /// Delayability: original satisfied implies transformed satisfied.
  /// Semantic: both verdicts agree on satisfaction.
  bool holds = true;
};

/// One instance of the delayability implication: r on (p, I) implies r on
/// (p o s, I'). Requires equal targets, s non-decreasing with values below
/// |p|, and content(I[s(n)]) contained in content(I'[n]) for every n < |s|.
ProbeResult probe_delayability(Restriction r, const HypSequence& p, const Informant& I, const Informant& I2,
                               const std::vector<std::size_t>& s);

/// Requires p and p2 pointwise semantically equal.
ProbeResult probe_semantic(Restriction r, const HypSequence& p, const HypSequence& p2, const Informant& I);

/// Checker-level implications that fail on (p, I), as readable names. Empty
/// means the lattice holds on this sequence.
std::vector<std::string> lattice_counterexamples(const HypSequence& p, const Informant& I);

}  // namespace inferlab
