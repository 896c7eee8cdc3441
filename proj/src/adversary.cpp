#include "inferlab/adversary.hpp"

#include <optional>
#include <stdexcept>

#include "inferlab/catalog.hpp"

namespace inferlab {
namespace {

/// First n in [lo, hi] where the opponent's conjecture on I[n] equals `goal`.
std::optional<std::size_t> find_conjecture(const Learner& opponent, const Informant& I, const UPSet& goal,
                                           std::size_t lo, std::size_t hi) {
  const DataSequence seq = I.prefix(hi);
  for (std::size_t n = lo; n <= hi; ++n) {
    if (opponent.conjecture_on(seq.prefix(n)).extension == goal) return n;
  }
  return std::nullopt;
}

/// First t in [lo, hi] whose conjecture on I[t] satisfies `pred`.
template <typename Pred>
std::optional<std::size_t> find_index(const Learner& opponent, const Informant& I, std::size_t lo, std::size_t hi,
                                      Pred pred) {
  const DataSequence seq = I.prefix(hi);
  for (std::size_t t = lo; t <= hi; ++t) {
    if (pred(opponent.conjecture_on(seq.prefix(t)).extension)) return t;
  }
  return std::nullopt;
}

Witness base(std::string adversary, const Learner& opponent, const Bounds& bounds) {
  Witness w;
  w.adversary = std::move(adversary);
  w.opponent = opponent.name();
  w.bounds = bounds;
  return w;
}

Witness exhausted(Witness w, std::string note) {
  w.kind = WitnessKind::Exhausted;
  w.note = std::move(note);
  return w;
}

std::vector<UPSet> extensions_of(const HypSequence& p) {
  std::vector<UPSet> out;
  for (const Hypothesis& h : p.items) out.push_back(h.extension);
  return out;
}

Witness violation(Witness w, const Learner& opponent, Restriction r, UPSet target, std::vector<Natural> head,
                  std::size_t s, std::size_t t) {
  w.kind = WitnessKind::RestrictionViolation;
  w.restriction = r;
  w.target = std::move(target);
  w.head = std::move(head);
  w.s = s;
  w.t = t;
  w.conjectures = extensions_of(run(opponent, Informant::with_head(w.target, w.head), t + 1));
  return w;
}

Natural max_or_zero(const FiniteSet& s) { return s.empty() ? 0 : *s.rbegin(); }

DataSet canonical_content(const FiniteSet& positives, std::size_t length) {
  return content(Informant::canonical(UPSet::from_finite(positives)).prefix(length));
}

Natural fresh_number(const DataSet& d) {
  const FiniteSet seen = outline(d);
  return seen.empty() ? 0 : *seen.rbegin() + 1;
}

}  // namespace

std::string to_string(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::RestrictionViolation: return "restriction-violation";
    case WitnessKind::MindchangeTranscript: return "mindchange-transcript";
    case WitnessKind::SplitPair: return "split-pair";
    case WitnessKind::Exhausted: return "exhausted";
  }
  return "?";
}

WitnessKind parse_witness_kind(std::string_view text) {
  for (WitnessKind k : {WitnessKind::RestrictionViolation, WitnessKind::MindchangeTranscript, WitnessKind::SplitPair,
                        WitnessKind::Exhausted}) {
    if (text == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown witness kind '" + std::string(text) + "'");
}

Witness caut_adversary(Restriction variant, const Learner& opponent, const Bounds& bounds) {
  if (variant != Restriction::CautTar && variant != Restriction::CautInf && variant != Restriction::Caut) {
    throw std::invalid_argument("caut_adversary needs caut_tar, caut_inf or caut");
  }
  const std::string id = variant == Restriction::Caut ? "caut" : to_string(variant);
  Witness w = base(id, opponent, bounds);
  const UPSet nat = UPSet::naturals();
  const auto n0 = find_conjecture(opponent, Informant::canonical(nat), nat, 0, bounds.n_bound);
  if (!n0) {
    return exhausted(std::move(w), "no conjecture of N on the canonical informant for N up to index " +
                                       std::to_string(bounds.n_bound));
  }
  w.params["n0"] = *n0;
  const UPSet target = UPSet::cofinite({*n0 + 1});
  if (variant == Restriction::CautTar) return violation(std::move(w), opponent, variant, target, {}, *n0, *n0);
  const auto t = find_index(opponent, Informant::canonical(target), *n0 + 1, *n0 + bounds.t_bound,
                            [&](const UPSet& e) {
                              return is_proper_superset(nat, e) &&
                                     (variant == Restriction::Caut || !e.is_finite());
                            });
  if (!t) return exhausted(std::move(w), "no retreat from N on " + target.to_string() + " within t_bound");
  return violation(std::move(w), opponent, variant, target, {}, *n0, *t);
}

Witness cautfin_adversary(const Learner& opponent, const Bounds& bounds) {
  Witness w = base("caut_fin", opponent, bounds);
  const UPSet nat = UPSet::naturals();
  const auto n0 = find_conjecture(opponent, Informant::canonical(nat), nat, 0, bounds.n_bound);
  if (!n0) {
    return exhausted(std::move(w), "no conjecture of N on the canonical informant for N up to index " +
                                       std::to_string(bounds.n_bound));
  }
  w.params["n0"] = *n0;
  const UPSet target = *n0 == 0 ? UPSet::empty() : UPSet::segment(*n0 - 1);
  const auto t = find_index(opponent, Informant::canonical(target), *n0 + 1, *n0 + bounds.t_bound,
                            [&](const UPSet& e) { return is_proper_superset(nat, e) && e.is_finite(); });
  if (!t) return exhausted(std::move(w), "no finite retreat from N on " + target.to_string() + " within t_bound");
  return violation(std::move(w), opponent, Restriction::CautFin, target, {}, *n0, *t);
}

Witness monotonicity_adversary(MonotonicityGame game, const Learner& opponent, const Bounds& bounds) {
  switch (game) {
    case MonotonicityGame::SMonVsDual: {
      Witness w = base("smon_vs_dual", opponent, bounds);
      const UPSet start = UPSet::from_finite({0});
      const Informant first = Informant::canonical(start);
      const auto n1 = find_conjecture(opponent, first, start, 0, bounds.n_bound);
      if (!n1) return exhausted(std::move(w), "no conjecture of {0} within n_bound");
      const std::vector<Natural> head = first.values(*n1);
      const FiniteSet shown(head.begin(), head.end());
      Natural x = 0;
      while (shown.count(x) != 0 || start.contains(x)) ++x;
      const UPSet target = set_union(start, UPSet::from_finite({x}));
      const UPSet at_n1 = opponent.conjecture_on(first.prefix(*n1)).extension;
      const auto t = find_index(opponent, Informant::with_head(target, head), *n1 + 1, *n1 + bounds.t_bound,
                                [&](const UPSet& e) { return !is_subset(e, at_n1); });
      w.params["n1"] = *n1;
      w.params["x"] = x;
      if (!t) return exhausted(std::move(w), "opponent never leaves {0} on " + target.to_string());
      return violation(std::move(w), opponent, Restriction::SMonDual, target, head, *n1, *t);
    }
    case MonotonicityGame::DualVsSMon: {
      Witness w = base("dual_vs_smon", opponent, bounds);
      const UPSet nat = UPSet::naturals();
      const auto n = find_conjecture(opponent, Informant::canonical(nat), nat, 0, bounds.n_bound);
      if (!n) return exhausted(std::move(w), "no conjecture of N within n_bound");
      const UPSet target = UPSet::segment(*n + 1);
      const auto t = find_index(opponent, Informant::canonical(target), *n + 1, *n + bounds.t_bound,
                                [&](const UPSet& e) { return !is_subset(nat, e); });
      w.params["n"] = *n;
      if (!t) return exhausted(std::move(w), "opponent keeps conjecturing N on " + target.to_string());
      return violation(std::move(w), opponent, Restriction::SMon, target, {}, *n, *t);
    }
    case MonotonicityGame::MonVsDual: {
      Witness w = base("mon_vs_dual", opponent, bounds);
      const UPSet x_lang = catalog::language("streamX");
      const Informant ix = Informant::canonical(x_lang);
      const auto n_x = find_conjecture(opponent, ix, x_lang, 0, bounds.n_bound);
      if (!n_x) return exhausted(std::move(w), "no conjecture of X within n_bound");
      const std::vector<Natural> head_x = ix.values(*n_x);
      const FiniteSet outline_x(head_x.begin(), head_x.end());
      const Natural n = outline_x.empty() ? 0 : max_or_zero(outline_x) / 3 + 1;
      const UPSet y_lang = catalog::language("streamY", {{"n", {n}}});
      const Informant iy = Informant::with_head(y_lang, head_x);
      const auto n_y = find_conjecture(opponent, iy, y_lang, *n_x + 1, bounds.n_bound);
      w.params["n_X"] = *n_x;
      w.params["n"] = n;
      if (!n_y) return exhausted(std::move(w), "no conjecture of " + y_lang.to_string() + " within n_bound");
      const std::vector<Natural> head_y = iy.values(*n_y);
      const FiniteSet outline_y(head_y.begin(), head_y.end());
      const Natural m = std::max(n + 1, outline_y.empty() ? 0 : max_or_zero(outline_y) / 3 + 1);
      const UPSet z_lang = catalog::language("streamZ", {{"n", {n}}, {"m", {m}}});
      w.params["n_Y"] = *n_y;
      w.params["m"] = m;
      w.params["element"] = 3 * (m + 1) + 1;
      const Informant iz = Informant::with_head(z_lang, head_y);
      if (auto n_z = find_conjecture(opponent, iz, z_lang, *n_y + 1, *n_y + bounds.t_bound)) {
        w.params["n_Z"] = *n_z;
      }
      return violation(std::move(w), opponent, Restriction::MonDual, z_lang, head_y, *n_x, *n_y);
    }
    case MonotonicityGame::DualVsMon: {
      Witness w = base("dual_vs_mon", opponent, bounds);
      const UPSet x_lang = catalog::language("evenX");
      const auto n_x = find_conjecture(opponent, Informant::canonical(x_lang), x_lang, 0, bounds.n_bound);
      if (!n_x) return exhausted(std::move(w), "no conjecture of X within n_bound");
      const Natural n = *n_x + 1;
      const UPSet y_lang = catalog::language("evenY", {{"n", {n}}});
      const auto n_y = find_conjecture(opponent, Informant::canonical(y_lang), y_lang, *n_x + 1, bounds.n_bound);
      w.params["n_X"] = *n_x;
      w.params["n"] = n;
      if (!n_y) return exhausted(std::move(w), "no conjecture of " + y_lang.to_string() + " within n_bound");
      const Natural m = *n_y + 1;
      const UPSet z_lang = catalog::language("evenZ", {{"n", {n}}, {"m", {m}}});
      w.params["n_Y"] = *n_y;
      w.params["m"] = m;
      w.params["element"] = 2 * m;
      if (auto n_z = find_conjecture(opponent, Informant::canonical(z_lang), z_lang, *n_y + 1,
                                     *n_y + bounds.t_bound)) {
        w.params["n_Z"] = *n_z;
      }
      return violation(std::move(w), opponent, Restriction::Mon, z_lang, {}, *n_x, *n_y);
    }
  }
  throw std::logic_error("unhandled monotonicity game");
}

Witness mindchange_driver(const Learner& opponent, const Bounds& bounds) {
  if (opponent.interface() != Interface::Sd) throw std::invalid_argument("mindchange driver needs an Sd opponent");
  Witness w = base("mindchange", opponent, bounds);
  DataSet d;
  while (w.rounds.size() < bounds.max_rounds) {
    const Label current = opponent.on_content(d).label;
    const Natural p0 = fresh_number(d);
    bool changed = false;
    for (unsigned b = 0; b < 2 && !changed; ++b) {
      FiniteSet positives = pos(d);
      positives.insert(p0 + b);
      for (std::size_t t = 0; t <= bounds.t_bound; ++t) {
        const DataSet next = canonical_content(positives, p0 + b + t);
        const Label label = opponent.on_content(next).label;
        if (label != current) {
          w.rounds.push_back({d, p0 + b, b, t, next, current, label});
          d = next;
          changed = true;
          break;
        }
      }
    }
    if (!changed) {
      w.kind = WitnessKind::SplitPair;
      w.base = d;
      FiniteSet first = pos(d), second = pos(d);
      first.insert(p0);
      second.insert(p0 + 1);
      w.first = UPSet::from_finite(first);
      w.second = UPSet::from_finite(second);
      w.label = current;
      w.params["round"] = w.rounds.size();
      return w;
    }
  }
  w.kind = WitnessKind::MindchangeTranscript;
  return w;
}

const std::vector<std::string>& adversary_ids() {
  static const std::vector<std::string> ids{"caut_tar",    "caut_inf",    "caut",         "caut_fin",  "smon_vs_dual",
                                            "dual_vs_smon", "mon_vs_dual", "dual_vs_mon", "mindchange"};
  return ids;
}

Witness run_adversary(std::string_view id, const Learner& opponent, const Bounds& bounds) {
  if (id == "caut_tar") return caut_adversary(Restriction::CautTar, opponent, bounds);
  if (id == "caut_inf") return caut_adversary(Restriction::CautInf, opponent, bounds);
  if (id == "caut") return caut_adversary(Restriction::Caut, opponent, bounds);
  if (id == "caut_fin") return cautfin_adversary(opponent, bounds);
  if (id == "smon_vs_dual") return monotonicity_adversary(MonotonicityGame::SMonVsDual, opponent, bounds);
  if (id == "dual_vs_smon") return monotonicity_adversary(MonotonicityGame::DualVsSMon, opponent, bounds);
  if (id == "mon_vs_dual") return monotonicity_adversary(MonotonicityGame::MonVsDual, opponent, bounds);
  if (id == "dual_vs_mon") return monotonicity_adversary(MonotonicityGame::DualVsMon, opponent, bounds);
  if (id == "mindchange") return mindchange_driver(opponent, bounds);
  throw std::invalid_argument("unknown adversary id '" + std::string(id) + "'");
}

bool verify_witness(const Witness& w, const Learner& opponent) {
  switch (w.kind) {
    case WitnessKind::Exhausted: return true;
    case WitnessKind::RestrictionViolation: {
      if (w.s > w.t) return false;
      const Informant I = Informant::with_head(w.target, w.head);
      if (!validate_prefix_for(I.prefix(w.t), w.target)) return false;
      const HypSequence p = run(opponent, I, w.t + 1);
      if (!w.conjectures.empty() && extensions_of(p) != w.conjectures) return false;
      Verdict claim;
      claim.restriction = w.restriction;
      claim.satisfied = false;
      claim.s = w.s;
      claim.t = w.t;
      return revalidate(claim, p, I);
    }
    case WitnessKind::MindchangeTranscript: {
      if (w.rounds.size() != w.bounds.max_rounds) return false;
      DataSet d;
      for (const MindchangeRound& r : w.rounds) {
        if (r.before != d || r.b > 1 || r.p != fresh_number(d) + r.b) return false;
        FiniteSet positives = pos(d);
        positives.insert(r.p);
        if (r.after != canonical_content(positives, r.p + r.t)) return false;
        const Label before = opponent.on_content(d).label;
        const Label after = opponent.on_content(r.after).label;
        if (before != r.label_before || after != r.label_after || before == after) return false;
        d = r.after;
      }
      return true;
    }
    case WitnessKind::SplitPair: {
      if (opponent.on_content(w.base).label != w.label) return false;
      const Natural p0 = fresh_number(w.base);
      for (unsigned b = 0; b < 2; ++b) {
        FiniteSet positives = pos(w.base);
        positives.insert(p0 + b);
        if ((b == 0 ? w.first : w.second) != UPSet::from_finite(positives)) return false;
        for (std::size_t t = 0; t <= w.bounds.t_bound; ++t) {
          if (opponent.on_content(canonical_content(positives, p0 + b + t)).label != w.label) return false;
        }
      }
      return true;
    }
  }
  return false;
}

}  // namespace inferlab
