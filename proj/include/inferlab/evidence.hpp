#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "inferlab/upset.hpp"

namespace inferlab {

/// A labeled example (x, 1) or (x, 0).
struct Example {
  Natural value = 0;
  bool positive = false;

  friend auto operator<=>(const Example&, const Example&) = default;
};

std::string to_string(const Example& e);

/// Finite data sequence. Rejects a value shown with both labels.
class DataSequence {
 public:
  DataSequence() = default;
  explicit DataSequence(std::vector<Example> items);

  /// Parses `0:+,1:-,3:+`; the empty string is the empty sequence.
  static DataSequence parse(std::string_view text);

  void push_back(const Example& e);

  const std::vector<Example>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const Example& operator[](std::size_t i) const { return items_[i]; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  /// The first n items (n clamped to size).
  DataSequence prefix(std::size_t n) const;

  std::string to_string() const;

  friend bool operator==(const DataSequence&, const DataSequence&) = default;

 private:
  std::vector<Example> items_;
};

/// Finite, label-consistent set of examples.
class DataSet {
 public:
  DataSet() = default;
  explicit DataSet(const std::vector<Example>& items);

  static DataSet parse(std::string_view text);

  void insert(const Example& e);
  bool contains(const Example& e) const { return items_.count(e) != 0; }

  const std::set<Example>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  /// Sorted by value: `0:+,3:-`.
  std::string to_string() const;

  friend bool operator==(const DataSet&, const DataSet&) = default;

 private:
  std::set<Example> items_;
};

enum class Projection { Pos, Neg, Outline };

FiniteSet project(Projection kind, const DataSequence& d);
FiniteSet project(Projection kind, const DataSet& d);

inline FiniteSet pos(const DataSequence& d) { return project(Projection::Pos, d); }
inline FiniteSet neg(const DataSequence& d) { return project(Projection::Neg, d); }
inline FiniteSet outline(const DataSequence& d) { return project(Projection::Outline, d); }
inline FiniteSet pos(const DataSet& d) { return project(Projection::Pos, d); }
inline FiniteSet neg(const DataSet& d) { return project(Projection::Neg, d); }
inline FiniteSet outline(const DataSet& d) { return project(Projection::Outline, d); }

DataSet content(const DataSequence& d);

/// True iff every (x, b) in d has b = [x in target].
bool validate_prefix_for(const DataSequence& d, const UPSet& target);

/// One edit applied to an informant's enumeration order.
///
/// Text forms: `shuffle:W` (block-wise seeded permutation of width W),
/// `default` (= shuffle:8), `swap:I:J`, `dup:I:K` (item I appears K times in a
/// row), `insert:P:X` or `insert:P:X:+|-` (emit value X at position P; a given
/// label must agree with the target).
struct Directive {
  enum class Kind { Shuffle, Swap, Duplicate, Insert };

  Kind kind = Kind::Shuffle;
  std::size_t first = 0;
  std::size_t second = 0;
  std::optional<bool> label;

  static Directive shuffle(std::size_t width) { return {Kind::Shuffle, width, 0, {}}; }
  static Directive swap(std::size_t i, std::size_t j) { return {Kind::Swap, i, j, {}}; }
  static Directive duplicate(std::size_t index, std::size_t times) {
    return {Kind::Duplicate, index, times, {}};
  }
  static Directive insert(std::size_t position, Natural value, std::optional<bool> label = {}) {
    return {Kind::Insert, position, value, label};
  }

  static Directive parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const Directive&, const Directive&) = default;
};

/// An informant for a target UPSet: an infinite, correctly labeled stream
/// that shows every natural at least once.
///
/// The stream is `head` followed by a backbone enumerating every natural not
/// in `head` (in increasing order, or block-shuffled), with the plan's edits
/// applied on top. Everything is a deterministic function of
/// (target, head, seed, plan).
class Informant {
 public:
  static Informant canonical(UPSet target);
  /// Throws std::invalid_argument if a directive carries a label that
  /// disagrees with the target, or a directive is malformed.
  static Informant scheduled(UPSet target, std::uint64_t seed, std::vector<Directive> plan);
  /// Shows `head` first, then the remaining naturals in increasing order.
  static Informant with_head(UPSet target, std::vector<Natural> head);

  const UPSet& target() const { return target_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<Natural>& head() const { return head_; }
  const std::vector<Directive>& plan() const { return plan_; }
  bool is_canonical() const;

  Example at(std::size_t i) const;
  DataSequence prefix(std::size_t n) const;
  /// The first n values shown (labels follow from the target).
  std::vector<Natural> values(std::size_t n) const;

  /// An index N such that every x <= bound is in outline(prefix(N)); derived
  /// from the schedule without running it.
  std::size_t coverage_bound(Natural bound) const;

  std::string describe() const;

  friend bool operator==(const Informant&, const Informant&) = default;

 private:
  Informant(UPSet target, std::uint64_t seed, std::vector<Natural> head, std::vector<Directive> plan);

  std::size_t shuffle_width() const;
  std::size_t max_referenced_position() const;
  std::size_t inserted_count() const;

  UPSet target_;
  std::uint64_t seed_ = 0;
  std::vector<Natural> head_;
  std::vector<Directive> plan_;
};

}  // namespace inferlab
