#include "inferlab/combinators.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace inferlab {
namespace {

/// Conjecture cache keyed by the text of the input sequence.
class Memo {
 public:
  std::optional<Hypothesis> find(const std::string& key) const {
    std::lock_guard lock(mutex_);
    if (auto it = table_.find(key); it != table_.end()) return it->second;
    return std::nullopt;
  }
  void store(const std::string& key, const Hypothesis& h) {
    std::lock_guard lock(mutex_);
    table_.emplace(key, h);
  }

 private:
  mutable std::mutex mutex_;
  std::unordered_map<std::string, Hypothesis> table_;
};

UPSet finite_upset(const FiniteSet& s) { return UPSet::from_finite(s); }

UPSet all_but(const FiniteSet& removed) { return UPSet::cofinite(removed); }

bool covers(const UPSet& s, const FiniteSet& xs) {
  return std::all_of(xs.begin(), xs.end(), [&](Natural x) { return s.contains(x); });
}

/// Union over t of the stages W_e^t with Cons(W_e^t, sigma).
UPSet consistent_stages(const Hypothesis& e, const FiniteSet& positives, const FiniteSet& negatives) {
  if (!covers(e.extension, positives)) return UPSet::empty();
  Natural t_pos = 0;
  for (Natural x : positives) t_pos = std::max(t_pos, e.delay(x));
  std::optional<Natural> t_bad;
  for (Natural x : negatives) {
    if (e.extension.contains(x)) t_bad = std::min(t_bad.value_or(e.delay(x)), e.delay(x));
  }
  if (!t_bad) return e.extension;
  if (*t_bad == 0 || t_pos > *t_bad - 1) return UPSet::empty();
  return finite_upset(stage_enumerate(e, *t_bad - 1));
}

Label derived_label(std::string_view combinator, const std::string& inner, const std::string& detail) {
  return program_label(std::string(combinator) + "[" + inner + "](" + detail + ")");
}

}  // namespace

std::size_t prefix_length(const DataSet& d) {
  const FiniteSet seen = outline(d);
  std::size_t n = 0;
  while (seen.count(n) != 0) ++n;
  return n;
}

DataSequence canonical_prefix(const DataSet& d) {
  const std::size_t n = prefix_length(d);
  const FiniteSet positives = pos(d);
  std::vector<Example> items;
  items.reserve(n);
  for (std::size_t i = 0; i < n; ++i) items.push_back({i, positives.count(i) != 0});
  return DataSequence(std::move(items));
}

Learner to_set_driven(const Learner& h) {
  return Learner::set_driven("to_sd(" + h.name() + ")",
                             [h](const DataSet& d) { return h.conjecture_on(canonical_prefix(d)); });
}

Hypothesis patch(const Hypothesis& e, const DataSet& d) {
  const UPSet extension = set_difference(set_union(e.extension, finite_upset(pos(d))), finite_upset(neg(d)));
  return make_hypothesis(program_label("patch(" + std::to_string(e.label) + ";" + d.to_string() + ")"), extension);
}

Learner patched_learner(const Learner& h) {
  const std::string name = "patch(" + h.name() + ")";
  if (h.interface() == Interface::Sd) {
    return Learner::set_driven(name, [h](const DataSet& d) { return patch(h.on_content(d), d); });
  }
  return Learner::gold(name, [h](const DataSequence& s) { return patch(h.conjecture_on(s), content(s)); });
}

Learner cons_wmon_wrapper(const Learner& h) {
  auto memo = std::make_shared<Memo>();
  const std::string name = "cons_wmon(" + h.name() + ")";
  return Learner::gold(name, [h, memo, name](const DataSequence& sigma) {
    // Earlier conjectures g(sigma[k]) for k < |sigma|, distinct extensions only.
    std::vector<UPSet> earlier;
    std::unordered_set<UPSet> seen_earlier;
    FiniteSet positives, negatives;
    Hypothesis current;
    for (std::size_t k = 0; k <= sigma.size(); ++k) {
      if (k > 0) {
        if (seen_earlier.insert(current.extension).second) earlier.push_back(current.extension);
        const Example& e = sigma[k - 1];
        (e.positive ? positives : negatives).insert(e.value);
      }
      const DataSequence prefix = sigma.prefix(k);
      const std::string key = prefix.to_string();
      if (auto cached = memo->find(key)) {
        current = *cached;
        continue;
      }
      UPSet extension = finite_upset(positives);
      extension = set_union(extension, consistent_stages(h.conjecture_on(prefix), positives, negatives));
      for (const UPSet& previous : earlier) {
        extension = set_union(extension, consistent_stages(make_hypothesis(0, previous), positives, negatives));
      }
      current = make_hypothesis(derived_label("cons_wmon", h.name(), key), extension);
      memo->store(key, current);
    }
    return current;
  });
}

Learner dual_wmon_poison(const Learner& inner) {
  const Learner h = inner.interface() == Interface::Sd ? inner : to_set_driven(inner);
  const std::string name = "dual_wmon_poison(" + inner.name() + ")";
  return Learner::gold(name, [h, name](const DataSequence& sigma) {
    const FiniteSet positives = pos(sigma);
    const std::string key = sigma.to_string();
    for (std::size_t k = 0; k <= sigma.size(); ++k) {
      const DataSequence tau = sigma.prefix(k);
      if (pos(tau) != positives) continue;
      if (!covers(h.on_content(content(tau)).extension, positives)) {
        return make_hypothesis(derived_label("poison_pos", name, key), finite_upset(positives));
      }
    }
    const Hypothesis current = h.on_content(content(sigma));
    if (consistent(current.extension, sigma)) {
      return make_hypothesis(derived_label("poison_pass", name, key), current.extension);
    }
    return make_hypothesis(derived_label("poison_neg", name, key), all_but(neg(sigma)));
  });
}

Learner cons_wmon_fourcase(const Learner& h) {
  auto memo = std::make_shared<Memo>();
  const std::string name = "cons_wmon_fourcase(" + h.name() + ")";
  auto g = std::make_shared<std::function<Hypothesis(const DataSequence&)>>();
  std::weak_ptr<std::function<Hypothesis(const DataSequence&)>> self = g;
  *g = [h, memo, name, self](const DataSequence& sigma) -> Hypothesis {
    // Shortest prefix with the same content.
    const DataSet full = content(sigma);
    std::size_t shortest = sigma.size();
    while (shortest > 0 && content(sigma.prefix(shortest - 1)) == full) --shortest;
    const DataSequence base = sigma.prefix(shortest);
    const std::string key = base.to_string();
    if (auto cached = memo->find(key)) return *cached;

    const FiniteSet positives = pos(base);
    const FiniteSet negatives = neg(base);
    const UPSet complement_of_neg = all_but(negatives);
    auto recurse = self.lock();
    Hypothesis out;
    bool decided = false;
    for (std::size_t k = 0; k < base.size() && !decided; ++k) {
      const DataSequence tau = base.prefix(k);
      if (neg(tau) == negatives && (*recurse)(tau).extension == complement_of_neg) {
        out = make_hypothesis(derived_label("fourcase_neg_repeat", h.name(), key), complement_of_neg);
        decided = true;
      }
    }
    if (!decided) {
      const Hypothesis current = h.conjecture_on(base);
      if (!covers(current.extension, positives)) {
        out = make_hypothesis(derived_label("fourcase_pos", h.name(), key), finite_upset(positives));
      } else if (consistent(current.extension, positives, negatives)) {
        out = make_hypothesis(derived_label("fourcase_pass", h.name(), key), current.extension);
      } else {
        out = make_hypothesis(derived_label("fourcase_neg", h.name(), key), complement_of_neg);
      }
    }
    memo->store(key, out);
    return out;
  };
  return Learner::gold(name, [g](const DataSequence& sigma) { return (*g)(sigma); });
}

const std::vector<std::string>& combinator_ids() {
  static const std::vector<std::string> ids{"to_sd", "patch", "cons_wmon", "dual_wmon_poison",
                                            "cons_wmon_fourcase"};
  return ids;
}

Learner apply_combinator(std::string_view id, const Learner& h) {
  if (id == "to_sd") return to_set_driven(h);
  if (id == "patch") return patched_learner(h);
  if (id == "cons_wmon") return cons_wmon_wrapper(h);
  if (id == "dual_wmon_poison") return dual_wmon_poison(h);
  if (id == "cons_wmon_fourcase") return cons_wmon_fourcase(h);
  throw std::invalid_argument("unknown combinator id '" + std::string(id) + "'");
}

Learner apply_pipeline(const Learner& base, const std::vector<std::string>& ids) {
  Learner out = base;
  for (const std::string& id : ids) out = apply_combinator(id, out);
  return out;
}

}  // namespace inferlab
