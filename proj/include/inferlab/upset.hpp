#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace inferlab {

using Natural = std::uint64_t;
using Bits = std::vector<bool>;
using FiniteSet = std::set<Natural>;

/// An ultimately periodic subset of the naturals.
///
/// Membership of x < |prefix| is prefix[x]; membership of x >= |prefix| is
/// period[(x - |prefix|) mod |period|]. Instances are always kept in canonical
/// form (shortest period, then shortest prefix), so two UPSets denote the same
/// set exactly when they compare equal.
class UPSet {
 public:
  /// The empty set.
  UPSet();

  /// Canonicalizes (prefix, period). Throws std::invalid_argument on an empty
  /// period.
  static UPSet normalize(Bits prefix, Bits period);

  /// Parses the `P|Q` text notation, e.g. `|10` for the even numbers.
  static UPSet parse(std::string_view text);

  static UPSet empty() { return UPSet(); }
  static UPSet naturals();
  static UPSet from_finite(const FiniteSet& elements);
  static UPSet cofinite(const FiniteSet& removed);
  /// {0, 1, ..., last}
  static UPSet segment(Natural last);
  /// {x : x mod modulus == residue}
  static UPSet residue_class(Natural residue, Natural modulus);

  bool contains(Natural x) const;

  const Bits& prefix() const { return prefix_; }
  const Bits& period() const { return period_; }

  bool is_finite() const;
  bool is_empty() const;
  /// Exact; empty optional when the set is empty.
  std::optional<Natural> min_element() const;
  /// Only meaningful for finite non-empty sets.
  std::optional<Natural> max_element() const;
  /// Number of elements; only for finite sets.
  std::size_t finite_size() const;

  /// Smallest n such that membership is periodic from n on with the joint
  /// period, i.e. a bound past which the two sets repeat in lockstep.
  static std::size_t joint_horizon(const UPSet& a, const UPSet& b);

  std::string to_string() const;

  friend bool operator==(const UPSet&, const UPSet&) = default;

 private:
  UPSet(Bits prefix, Bits period) : prefix_(std::move(prefix)), period_(std::move(period)) {}

  Bits prefix_;
  Bits period_;
};

enum class Relation { Equal, ProperSubset, ProperSuperset, Incomparable };

enum class SetOp { Union, Intersection, Difference };

bool member(const UPSet& s, Natural x);
Relation relate(const UPSet& a, const UPSet& b);
bool is_subset(const UPSet& a, const UPSet& b);
bool is_proper_superset(const UPSet& a, const UPSet& b);
bool disjoint(const UPSet& a, const UPSet& b);
UPSet combine(SetOp op, const UPSet& a, const UPSet& b);
UPSet complement(const UPSet& a);
/// {x <= bound : x in a}, increasing.
std::vector<Natural> bounded_elements(const UPSet& a, Natural bound);

inline UPSet set_union(const UPSet& a, const UPSet& b) { return combine(SetOp::Union, a, b); }
inline UPSet set_intersection(const UPSet& a, const UPSet& b) {
  return combine(SetOp::Intersection, a, b);
}
inline UPSet set_difference(const UPSet& a, const UPSet& b) {
  return combine(SetOp::Difference, a, b);
}

std::string to_string(Relation r);
std::string to_string(SetOp op);

}  // namespace inferlab

template <>
struct std::hash<inferlab::UPSet> {
  std::size_t operator()(const inferlab::UPSet& s) const noexcept;
};
