#include "inferlab/interaction.hpp"

#include <random>
#include <stdexcept>

namespace inferlab {
namespace {

RunObserver& observer() {
  static RunObserver instance;
  return instance;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string to_string(Interface kind) {
  switch (kind) {
    case Interface::G: return "G";
    case Interface::Psd: return "Psd";
    case Interface::Sd: return "Sd";
    case Interface::It: return "It";
  }
  return "?";
}

Learner Learner::gold(std::string name, GFn fn) { return Learner(std::move(name), std::move(fn)); }
Learner Learner::partially_set_driven(std::string name, PsdFn fn) {
  return Learner(std::move(name), std::move(fn));
}
Learner Learner::set_driven(std::string name, SdFn fn) { return Learner(std::move(name), std::move(fn)); }
Learner Learner::iterative(std::string name, ItFn fn) { return Learner(std::move(name), std::move(fn)); }

Interface Learner::interface() const { return static_cast<Interface>(fn_.index()); }

Hypothesis Learner::conjecture_on(const DataSequence& sigma) const {
  return std::visit(Overloaded{
                        [&](const GFn& f) { return f(sigma); },
                        [&](const PsdFn& f) { return f(content(sigma), sigma.size()); },
                        [&](const SdFn& f) { return f(content(sigma)); },
                        [&](const ItFn& f) {
                          Hypothesis h = empty_conjecture();
                          for (const Example& e : sigma) h = f(h, e);
                          return h;
                        },
                    },
                    fn_);
}

Hypothesis Learner::on_content(const DataSet& d) const {
  if (const auto* f = std::get_if<SdFn>(&fn_)) return (*f)(d);
  throw std::logic_error(name_ + " is not set-driven");
}

Hypothesis Learner::on_content(const DataSet& d, std::size_t steps) const {
  if (const auto* f = std::get_if<PsdFn>(&fn_)) return (*f)(d, steps);
  throw std::logic_error(name_ + " is not partially set-driven");
}

Hypothesis Learner::step(const Hypothesis& previous, const Example& next) const {
  if (const auto* f = std::get_if<ItFn>(&fn_)) return (*f)(previous, next);
  throw std::logic_error(name_ + " is not iterative");
}

HypSequence run(const Learner& learner, const Informant& informant, std::size_t horizon) {
  HypSequence out;
  out.provenance = {learner.name(), informant.describe(), horizon};
  out.items.reserve(horizon);
  const DataSequence full = informant.prefix(horizon == 0 ? 0 : horizon - 1);
  if (learner.interface() == Interface::It) {
    Hypothesis h = empty_conjecture();
    for (std::size_t i = 0; i < horizon; ++i) {
      if (i > 0) h = learner.step(h, full[i - 1]);
      out.items.push_back(h);
    }
  } else {
    for (std::size_t i = 0; i < horizon; ++i) out.items.push_back(learner.conjecture_on(full.prefix(i)));
  }
  if (observer()) observer()(out, informant);
  return out;
}

void set_run_observer(RunObserver o) { observer() = std::move(o); }

OrderProbeReport order_insensitivity_probe(const Learner& learner, const UPSet& target, std::size_t trials,
                                           std::uint64_t seed, std::size_t horizon) {
  OrderProbeReport report;
  std::mt19937_64 rng(seed);
  const std::size_t widths[] = {1, 2, 4, 8};
  auto sample = [&]() {
    std::vector<Directive> plan{Directive::shuffle(widths[rng() % 4])};
    if (rng() % 2 == 0) plan.push_back(Directive::duplicate(rng() % horizon, 1 + rng() % 3));
    return Informant::scheduled(target, rng(), std::move(plan));
  };
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const Informant a = sample();
    const Informant b = sample();
    const DataSequence pa = a.prefix(horizon);
    const DataSequence pb = b.prefix(horizon);
    for (std::size_t i = 0; i <= horizon; ++i) {
      const DataSequence si = pa.prefix(i);
      const DataSet ci = content(si);
      for (std::size_t j = 0; j <= horizon; ++j) {
        const DataSequence sj = pb.prefix(j);
        if (content(sj) != ci) continue;
        ++report.pairs_compared;
        const Hypothesis hi = learner.conjecture_on(si);
        const Hypothesis hj = learner.conjecture_on(sj);
        if (hi.label != hj.label) ++report.label_discrepancies;
        if (!sem_equiv(hi, hj)) {
          if (report.semantic_discrepancies++ == 0) {
            report.first_discrepancy = "[" + si.to_string() + "] vs [" + sj.to_string() + "]: " +
                                       hi.extension.to_string() + " vs " + hj.extension.to_string();
          }
        }
      }
    }
  }
  return report;
}

}  // namespace inferlab
