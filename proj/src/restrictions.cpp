#include "inferlab/restrictions.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace inferlab {
namespace {

struct Entry {
  Restriction r;
  const char* id;
};

constexpr Entry kEntries[] = {
    {Restriction::Cons, "cons"},         {Restriction::SMon, "smon"},         {Restriction::SMonDual, "smon_d"},
    {Restriction::SMonBoth, "smon_b"},   {Restriction::Mon, "mon"},           {Restriction::MonDual, "mon_d"},
    {Restriction::MonBoth, "mon_b"},     {Restriction::WMon, "wmon"},         {Restriction::WMonDual, "wmon_d"},
    {Restriction::WMonBoth, "wmon_b"},   {Restriction::Caut, "caut"},         {Restriction::CautTar, "caut_tar"},
    {Restriction::CautFin, "caut_fin"},  {Restriction::CautInf, "caut_inf"},  {Restriction::Bc, "bc"},
    {Restriction::Ex, "ex"},
};

/// Distinct extensions of p, each index mapped to its class.
struct Extensions {
  std::vector<UPSet> distinct;
  std::vector<std::size_t> cls;

  explicit Extensions(const HypSequence& p) {
    std::unordered_map<UPSet, std::size_t> ids;
    for (const Hypothesis& h : p.items) {
      auto [it, inserted] = ids.emplace(h.extension, distinct.size());
      if (inserted) distinct.push_back(h.extension);
      cls.push_back(it->second);
    }
  }
};

/// Running pos/neg of I[t] for t = 0, 1, ...
struct PrefixData {
  std::vector<FiniteSet> pos, neg;

  PrefixData(const Informant& I, std::size_t horizon) {
    const DataSequence seq = I.prefix(horizon == 0 ? 0 : horizon - 1);
    FiniteSet p, n;
    for (std::size_t t = 0; t < horizon; ++t) {
      pos.push_back(p);
      neg.push_back(n);
      if (t < seq.size()) (seq[t].positive ? p : n).insert(seq[t].value);
    }
  }
};

bool strong(const UPSet& a, const UPSet& b) { return is_subset(a, b); }
bool strong_dual(const UPSet& a, const UPSet& b) { return is_subset(b, a); }
bool mon(const UPSet& a, const UPSet& b, const UPSet& target) {
  return is_subset(set_intersection(a, target), b);
}
bool mon_dual(const UPSet& a, const UPSet& b, const UPSet& target) {
  return is_subset(b, set_union(a, target));
}

/// True iff the pair (A = W_p(s), B = W_p(t)) satisfies the monotonicity
/// relation; `gate` is Cons(p(s), I[t]) for the weak variants.
bool monotone_pair_holds(Restriction r, const UPSet& a, const UPSet& b, const UPSet& target, bool gate) {
  switch (r) {
    case Restriction::SMon: return strong(a, b);
    case Restriction::SMonDual: return strong_dual(a, b);
    case Restriction::SMonBoth: return strong(a, b) && strong_dual(a, b);
    case Restriction::Mon: return mon(a, b, target);
    case Restriction::MonDual: return mon_dual(a, b, target);
    case Restriction::MonBoth: return mon(a, b, target) && mon_dual(a, b, target);
    case Restriction::WMon: return !gate || strong(a, b);
    case Restriction::WMonDual: return !gate || strong_dual(a, b);
    case Restriction::WMonBoth: return !gate || (strong(a, b) && strong_dual(a, b));
    default: throw std::invalid_argument(to_string(r) + " is not a monotonicity restriction");
  }
}

bool is_weak(Restriction r) {
  return r == Restriction::WMon || r == Restriction::WMonDual || r == Restriction::WMonBoth;
}

/// True iff the pair s < t violates the cautiousness relation.
bool cautious_pair_violates(Restriction r, const UPSet& a, const UPSet& b) {
  if (!is_proper_superset(a, b)) return false;
  switch (r) {
    case Restriction::Caut: return true;
    case Restriction::CautFin: return b.is_finite();
    case Restriction::CautInf: return !b.is_finite();
    default: throw std::invalid_argument(to_string(r) + " is not a pairwise cautiousness restriction");
  }
}

std::string pair_text(const char* name, std::size_t s, std::size_t t, const UPSet& a, const UPSet& b) {
  return std::string(name) + " fails for p(" + std::to_string(s) + ")=" + a.to_string() + ", p(" +
         std::to_string(t) + ")=" + b.to_string();
}

Verdict violated(Restriction r, std::size_t s, std::size_t t, std::string relation) {
  return Verdict{r, false, s, t, std::nullopt, std::move(relation)};
}

}  // namespace

std::string to_string(Restriction r) {
  for (const Entry& e : kEntries)
    if (e.r == r) return e.id;
  return "?";
}

Restriction parse_restriction(std::string_view id) {
  for (const Entry& e : kEntries)
    if (id == e.id) return e.r;
  throw std::invalid_argument("unknown restriction id '" + std::string(id) + "'");
}

const std::vector<Restriction>& all_restrictions() {
  static const std::vector<Restriction> all = [] {
    std::vector<Restriction> v;
    for (const Entry& e : kEntries) v.push_back(e.r);
    return v;
  }();
  return all;
}

bool is_monotone(Restriction r) { return r >= Restriction::SMon && r <= Restriction::WMonBoth; }
bool is_cautious(Restriction r) { return r >= Restriction::Caut && r <= Restriction::CautInf; }
bool is_convergence(Restriction r) { return r == Restriction::Bc || r == Restriction::Ex; }

Verdict check_cons(const HypSequence& p, const Informant& I) {
  const PrefixData data(I, p.size());
  for (std::size_t n = 0; n < p.size(); ++n) {
    if (!consistent(p[n].extension, data.pos[n], data.neg[n])) {
      return violated(Restriction::Cons, n, n,
                      "p(" + std::to_string(n) + ")=" + p[n].extension.to_string() + " inconsistent with I[" +
                          std::to_string(n) + "]");
    }
  }
  return Verdict{Restriction::Cons, true, {}, {}, {}, {}};
}

Verdict check_monotone(Restriction variant, const HypSequence& p, const Informant& I) {
  if (!is_monotone(variant)) throw std::invalid_argument(to_string(variant) + " is not a monotonicity restriction");
  const Extensions ext(p);
  const UPSet& target = I.target();
  const bool weak = is_weak(variant);
  std::optional<PrefixData> data;
  if (weak) data.emplace(I, p.size());
  std::map<std::pair<std::size_t, std::size_t>, bool> memo;
  for (std::size_t t = 0; t < p.size(); ++t) {
    for (std::size_t s = 0; s < t; ++s) {
      const UPSet& a = ext.distinct[ext.cls[s]];
      const UPSet& b = ext.distinct[ext.cls[t]];
      bool holds;
      if (weak) {
        const bool gate = consistent(a, data->pos[t], data->neg[t]);
        holds = monotone_pair_holds(variant, a, b, target, gate);
      } else {
        const auto key = std::make_pair(ext.cls[s], ext.cls[t]);
        auto it = memo.find(key);
        if (it == memo.end()) it = memo.emplace(key, monotone_pair_holds(variant, a, b, target, true)).first;
        holds = it->second;
      }
      if (!holds) return violated(variant, s, t, pair_text(to_string(variant).c_str(), s, t, a, b));
    }
  }
  return Verdict{variant, true, {}, {}, {}, {}};
}

Verdict check_cautious(Restriction variant, const HypSequence& p, const Informant& I) {
  if (!is_cautious(variant)) throw std::invalid_argument(to_string(variant) + " is not a cautiousness restriction");
  const Extensions ext(p);
  if (variant == Restriction::CautTar) {
    for (std::size_t t = 0; t < p.size(); ++t) {
      if (is_proper_superset(p[t].extension, I.target())) {
        return violated(variant, t, t,
                        "p(" + std::to_string(t) + ")=" + p[t].extension.to_string() + " is a proper superset of " +
                            I.target().to_string());
      }
    }
    return Verdict{variant, true, {}, {}, {}, {}};
  }
  std::map<std::pair<std::size_t, std::size_t>, bool> memo;
  for (std::size_t t = 0; t < p.size(); ++t) {
    for (std::size_t s = 0; s < t; ++s) {
      const auto key = std::make_pair(ext.cls[s], ext.cls[t]);
      auto it = memo.find(key);
      if (it == memo.end()) {
        it = memo.emplace(key, cautious_pair_violates(variant, ext.distinct[key.first], ext.distinct[key.second]))
                 .first;
      }
      if (it->second) {
        return violated(variant, s, t,
                        pair_text(to_string(variant).c_str(), s, t, p[s].extension, p[t].extension));
      }
    }
  }
  return Verdict{variant, true, {}, {}, {}, {}};
}

Verdict check_bc(const HypSequence& p, const UPSet& target) {
  if (p.size() == 0) return Verdict{Restriction::Bc, false, {}, {}, {}, "empty horizon"};
  std::size_t n = p.size();
  while (n > 0 && p[n - 1].extension == target) --n;
  if (n == p.size()) {
    const std::size_t last = p.size() - 1;
    return violated(Restriction::Bc, last, last,
                    "p(" + std::to_string(last) + ")=" + p[last].extension.to_string() + " differs from " +
                        target.to_string());
  }
  return Verdict{Restriction::Bc, true, {}, {}, n, {}};
}

Verdict check_ex(const HypSequence& p, const UPSet& target) {
  if (p.size() < 2) return Verdict{Restriction::Ex, false, {}, {}, {}, "horizon too short to observe a label"};
  const std::size_t last = p.size() - 1;
  if (p[last].extension != target) {
    return violated(Restriction::Ex, last, last,
                    "p(" + std::to_string(last) + ")=" + p[last].extension.to_string() + " differs from " +
                        target.to_string());
  }
  std::size_t n = last;
  while (n > 0 && p[n - 1].label == p[last].label) --n;
  if (n == last) {
    return violated(Restriction::Ex, last - 1, last,
                    "label changes from " + std::to_string(p[last - 1].label) + " to " +
                        std::to_string(p[last].label) + " at the end of the horizon");
  }
  return Verdict{Restriction::Ex, true, {}, {}, n, {}};
}

Verdict check(Restriction r, const HypSequence& p, const Informant& I) {
  if (r == Restriction::Cons) return check_cons(p, I);
  if (is_monotone(r)) return check_monotone(r, p, I);
  if (is_cautious(r)) return check_cautious(r, p, I);
  if (r == Restriction::Bc) return check_bc(p, I.target());
  return check_ex(p, I.target());
}

bool revalidate(const Verdict& v, const HypSequence& p, const Informant& I) {
  if (v.satisfied) return check(v.restriction, p, I) == v;
  const Restriction r = v.restriction;
  if (!v.s || !v.t) {
    // Only the degenerate short-horizon convergence failures carry no index.
    return is_convergence(r) && !check(r, p, I).satisfied && p.size() < (r == Restriction::Ex ? 2u : 1u);
  }
  const std::size_t s = *v.s, t = *v.t;
  if (s > t || t >= p.size()) return false;
  const UPSet& a = p[s].extension;
  const UPSet& b = p[t].extension;
  if (r == Restriction::Cons) {
    if (s != t) return false;
    const DataSequence prefix = I.prefix(t);
    return !consistent(b, prefix);
  }
  if (is_monotone(r)) {
    if (s == t) return false;
    const bool gate = consistent(a, I.prefix(t));
    return !monotone_pair_holds(r, a, b, I.target(), gate);
  }
  if (r == Restriction::CautTar) return s == t && is_proper_superset(b, I.target());
  if (is_cautious(r)) return s < t && cautious_pair_violates(r, a, b);
  if (t + 1 != p.size()) return false;
  if (r == Restriction::Bc) return b != I.target();
  return b != I.target() || (s + 1 == t && p[s].label != p[t].label);
}

ProbeResult probe_delayability(Restriction r, const HypSequence& p, const Informant& I, const Informant& I2,
                               const std::vector<std::size_t>& s) {
  if (I.target() != I2.target()) throw ProbeError("informants present different targets");
  for (std::size_t n = 0; n < s.size(); ++n) {
    if (s[n] >= p.size()) throw ProbeError("step map value " + std::to_string(s[n]) + " beyond the sequence");
    if (n > 0 && s[n] < s[n - 1]) throw ProbeError("step map is not monotone at " + std::to_string(n));
  }
  const std::size_t reach = s.empty() ? 0 : s.back();
  const DataSequence a = I.prefix(reach);
  const DataSequence b = I2.prefix(s.size());
  for (std::size_t n = 0; n < s.size(); ++n) {
    const DataSet left = content(a.prefix(s[n]));
    const DataSet right = content(b.prefix(n));
    if (!std::includes(right.begin(), right.end(), left.begin(), left.end())) {
      throw ProbeError("content(I[s(" + std::to_string(n) + ")]) is not contained in content(I'[" +
                       std::to_string(n) + "])");
    }
  }
  HypSequence delayed;
  delayed.provenance = {p.provenance.learner + " delayed", I2.describe(), s.size()};
  for (std::size_t v : s) delayed.items.push_back(p[v]);
  ProbeResult out{check(r, p, I), check(r, delayed, I2), true};
  out.holds = !out.original.satisfied || out.transformed.satisfied;
  return out;
}

ProbeResult probe_semantic(Restriction r, const HypSequence& p, const HypSequence& p2, const Informant& I) {
  if (p.size() != p2.size()) throw ProbeError("sequences differ in length");
  for (std::size_t n = 0; n < p.size(); ++n) {
    if (!sem_equiv(p[n], p2[n])) throw ProbeError("sequences differ semantically at " + std::to_string(n));
  }
  ProbeResult out{check(r, p, I), check(r, p2, I), true};
  out.holds = out.original.satisfied == out.transformed.satisfied;
  return out;
}

std::vector<std::string> lattice_counterexamples(const HypSequence& p, const Informant& I) {
  std::map<Restriction, bool> ok;
  for (Restriction r : all_restrictions()) ok[r] = check(r, p, I).satisfied;
  std::vector<std::string> failures;
  auto implies = [&](bool premise, bool conclusion, const char* name) {
    if (premise && !conclusion) failures.emplace_back(name);
  };
  using R = Restriction;
  implies(ok[R::SMon], ok[R::Mon], "smon => mon");
  implies(ok[R::SMon], ok[R::WMon], "smon => wmon");
  implies(ok[R::SMon], ok[R::Caut], "smon => caut");
  implies(ok[R::SMonDual], ok[R::MonDual], "smon_d => mon_d");
  implies(ok[R::SMonDual], ok[R::WMonDual], "smon_d => wmon_d");
  implies(ok[R::SMon] && ok[R::Bc], ok[R::MonBoth], "smon & bc => mon_b");
  implies(ok[R::SMonDual] && ok[R::Bc], ok[R::MonBoth], "smon_d & bc => mon_b");
  implies(ok[R::Caut], ok[R::CautFin] && ok[R::CautInf], "caut => caut_fin & caut_inf");
  implies(ok[R::CautFin] && ok[R::CautInf], ok[R::Caut], "caut_fin & caut_inf => caut");
  implies(ok[R::Caut] && ok[R::Bc], ok[R::CautTar], "caut & bc => caut_tar");
  implies(ok[R::Ex], ok[R::Bc], "ex => bc");
  implies(ok[R::SMonBoth], ok[R::SMon] && ok[R::SMonDual], "smon_b => smon & smon_d");
  implies(ok[R::MonBoth], ok[R::Mon] && ok[R::MonDual], "mon_b => mon & mon_d");
  implies(ok[R::WMonBoth], ok[R::WMon] && ok[R::WMonDual], "wmon_b => wmon & wmon_d");
  return failures;
}

}  // namespace inferlab
