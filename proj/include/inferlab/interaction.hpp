#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "inferlab/evidence.hpp"
#include "inferlab/hypothesis.hpp"

namespace inferlab {

enum class Interface { G, Psd, Sd, It };

std::string to_string(Interface kind);

/// A total, deterministic learner behind one of the four interaction
/// interfaces.
class Learner {
 public:
  using GFn = std::function<Hypothesis(const DataSequence&)>;
  using PsdFn = std::function<Hypothesis(const DataSet&, std::size_t)>;
  using SdFn = std::function<Hypothesis(const DataSet&)>;
  using ItFn = std::function<Hypothesis(const Hypothesis&, const Example&)>;

  static Learner gold(std::string name, GFn fn);
  static Learner partially_set_driven(std::string name, PsdFn fn);
  static Learner set_driven(std::string name, SdFn fn);
  static Learner iterative(std::string name, ItFn fn);

  const std::string& name() const { return name_; }
  Interface interface() const;

  /// The conjecture the interaction operator assigns after seeing exactly
  /// `sigma`: h(sigma), h(content, |sigma|), h(content) or the fold of the
  /// iterative step from the empty conjecture.
  Hypothesis conjecture_on(const DataSequence& sigma) const;

  /// Sd only; throws std::logic_error for other interfaces.
  Hypothesis on_content(const DataSet& d) const;
  /// Psd only.
  Hypothesis on_content(const DataSet& d, std::size_t steps) const;
  /// It only.
  Hypothesis step(const Hypothesis& previous, const Example& next) const;

 private:
  Learner(std::string name, std::variant<GFn, PsdFn, SdFn, ItFn> fn)
      : name_(std::move(name)), fn_(std::move(fn)) {}

  std::string name_;
  std::variant<GFn, PsdFn, SdFn, ItFn> fn_;
};

struct Provenance {
  std::string learner;
  std::string informant;
  std::size_t horizon = 0;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Items p(0), ..., p(horizon - 1).
struct HypSequence {
  std::vector<Hypothesis> items;
  Provenance provenance;

  std::size_t size() const { return items.size(); }
  const Hypothesis& operator[](std::size_t i) const { return items[i]; }

  friend bool operator==(const HypSequence&, const HypSequence&) = default;
};

/// p(i) = conjecture on the first i items of I, for i < horizon.
HypSequence run(const Learner& learner, const Informant& informant, std::size_t horizon);

/// Called after every `run`; tests use it to audit all generated sequences.
using RunObserver = std::function<void(const HypSequence&, const Informant&)>;
void set_run_observer(RunObserver observer);

struct OrderProbeReport {
  std::size_t pairs_compared = 0;
  std::size_t semantic_discrepancies = 0;
  std::size_t label_discrepancies = 0;
  /// Description of the first semantic discrepancy, if any.
  std::string first_discrepancy;
};

/// Samples pairs of informants for L, finds index pairs (i, j) with
/// content(I[i]) = content(I'[j]) and compares the conjectures.
OrderProbeReport order_insensitivity_probe(const Learner& learner, const UPSet& target, std::size_t trials,
                                           std::uint64_t seed, std::size_t horizon = 24);

}  // namespace inferlab
