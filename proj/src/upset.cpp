#include "inferlab/upset.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace inferlab {
namespace {

Bits minimal_period(const Bits& period) {
  const std::size_t n = period.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = period[i] == period[i % d];
    if (periodic) return Bits(period.begin(), period.begin() + static_cast<std::ptrdiff_t>(d));
  }
  return period;
}

}  // namespace

UPSet::UPSet() : period_{false} {}

UPSet UPSet::normalize(Bits prefix, Bits period) {
  if (period.empty()) throw std::invalid_argument("UPSet period must be nonempty");
  period = minimal_period(period);
  // Absorb the prefix tail into the period while it matches the rotated cycle.
  while (!prefix.empty() && prefix.back() == period.back()) {
    prefix.pop_back();
    const bool last = period.back();
    for (std::size_t i = period.size() - 1; i > 0; --i) period[i] = period[i - 1];
    period[0] = last;
  }
  return UPSet(std::move(prefix), std::move(period));
}

UPSet UPSet::parse(std::string_view text) {
  const auto bar = text.find('|');
  if (bar == std::string_view::npos) {
    throw std::invalid_argument("UPSet text must have the form P|Q: '" + std::string(text) + "'");
  }
  auto to_bits = [&](std::string_view part) {
    Bits bits;
    bits.reserve(part.size());
    for (char c : part) {
      if (c == '0' || c == '1') {
        bits.push_back(c == '1');
      } else {
        throw std::invalid_argument("invalid character '" + std::string(1, c) +
                                    "' in UPSet text '" + std::string(text) + "'");
      }
    }
    return bits;
  };
  Bits prefix = to_bits(text.substr(0, bar));
  Bits period = to_bits(text.substr(bar + 1));
  if (period.empty()) {
    throw std::invalid_argument("empty period in UPSet text '" + std::string(text) + "'");
  }
  return normalize(std::move(prefix), std::move(period));
}

UPSet UPSet::naturals() { return UPSet({}, {true}); }

UPSet UPSet::from_finite(const FiniteSet& elements) {
  if (elements.empty()) return UPSet();
  Bits prefix(*elements.rbegin() + 1, false);
  for (Natural x : elements) prefix[x] = true;
  return normalize(std::move(prefix), {false});
}

UPSet UPSet::cofinite(const FiniteSet& removed) { return complement(from_finite(removed)); }

UPSet UPSet::segment(Natural last) { return normalize(Bits(last + 1, true), {false}); }

UPSet UPSet::residue_class(Natural residue, Natural modulus) {
  if (modulus == 0) throw std::invalid_argument("residue class modulus must be positive");
  Bits period(modulus, false);
  period[residue % modulus] = true;
  return normalize({}, std::move(period));
}

bool UPSet::contains(Natural x) const {
  if (x < prefix_.size()) return prefix_[x];
  return period_[(x - prefix_.size()) % period_.size()];
}

bool UPSet::is_finite() const {
  return std::none_of(period_.begin(), period_.end(), [](bool b) { return b; });
}

bool UPSet::is_empty() const { return is_finite() && finite_size() == 0; }

std::optional<Natural> UPSet::min_element() const {
  for (std::size_t i = 0; i < prefix_.size(); ++i)
    if (prefix_[i]) return i;
  for (std::size_t i = 0; i < period_.size(); ++i)
    if (period_[i]) return prefix_.size() + i;
  return std::nullopt;
}

std::optional<Natural> UPSet::max_element() const {
  if (!is_finite()) return std::nullopt;
  for (std::size_t i = prefix_.size(); i > 0; --i)
    if (prefix_[i - 1]) return i - 1;
  return std::nullopt;
}

std::size_t UPSet::finite_size() const {
  return static_cast<std::size_t>(std::count(prefix_.begin(), prefix_.end(), true));
}

std::size_t UPSet::joint_horizon(const UPSet& a, const UPSet& b) {
  return std::max(a.prefix_.size(), b.prefix_.size()) +
         std::lcm(a.period_.size(), b.period_.size());
}

std::string UPSet::to_string() const {
  std::string out;
  out.reserve(prefix_.size() + period_.size() + 1);
  for (bool b : prefix_) out.push_back(b ? '1' : '0');
  out.push_back('|');
  for (bool b : period_) out.push_back(b ? '1' : '0');
  return out;
}

bool member(const UPSet& s, Natural x) { return s.contains(x); }

bool is_subset(const UPSet& a, const UPSet& b) {
  const std::size_t horizon = UPSet::joint_horizon(a, b);
  for (std::size_t x = 0; x < horizon; ++x)
    if (a.contains(x) && !b.contains(x)) return false;
  return true;
}

bool is_proper_superset(const UPSet& a, const UPSet& b) { return a != b && is_subset(b, a); }

bool disjoint(const UPSet& a, const UPSet& b) {
  const std::size_t horizon = UPSet::joint_horizon(a, b);
  for (std::size_t x = 0; x < horizon; ++x)
    if (a.contains(x) && b.contains(x)) return false;
  return true;
}

Relation relate(const UPSet& a, const UPSet& b) {
  if (a == b) return Relation::Equal;
  const bool ab = is_subset(a, b);
  const bool ba = is_subset(b, a);
  if (ab) return Relation::ProperSubset;
  if (ba) return Relation::ProperSuperset;
  return Relation::Incomparable;
}

UPSet combine(SetOp op, const UPSet& a, const UPSet& b) {
  const std::size_t pre = std::max(a.prefix().size(), b.prefix().size());
  const std::size_t per = std::lcm(a.period().size(), b.period().size());
  auto apply = [op](bool x, bool y) {
    switch (op) {
      case SetOp::Union: return x || y;
      case SetOp::Intersection: return x && y;
      case SetOp::Difference: return x && !y;
    }
    return false;
  };
  Bits prefix(pre), period(per);
  for (std::size_t x = 0; x < pre; ++x) prefix[x] = apply(a.contains(x), b.contains(x));
  for (std::size_t i = 0; i < per; ++i) period[i] = apply(a.contains(pre + i), b.contains(pre + i));
  return UPSet::normalize(std::move(prefix), std::move(period));
}

UPSet complement(const UPSet& a) {
  Bits prefix = a.prefix();
  Bits period = a.period();
  prefix.flip();
  period.flip();
  return UPSet::normalize(std::move(prefix), std::move(period));
}

std::vector<Natural> bounded_elements(const UPSet& a, Natural bound) {
  std::vector<Natural> out;
  if (a.is_finite()) {
    const auto& p = a.prefix();
    for (Natural x = 0; x < p.size() && x <= bound; ++x)
      if (p[x]) out.push_back(x);
    return out;
  }
  for (Natural x = 0; x <= bound; ++x)
    if (a.contains(x)) out.push_back(x);
  return out;
}

std::string to_string(Relation r) {
  switch (r) {
    case Relation::Equal: return "Equal";
    case Relation::ProperSubset: return "ProperSubset";
    case Relation::ProperSuperset: return "ProperSuperset";
    case Relation::Incomparable: return "Incomparable";
  }
  return "?";
}

std::string to_string(SetOp op) {
  switch (op) {
    case SetOp::Union: return "union";
    case SetOp::Intersection: return "intersection";
    case SetOp::Difference: return "difference";
  }
  return "?";
}

}  // namespace inferlab

std::size_t std::hash<inferlab::UPSet>::operator()(const inferlab::UPSet& s) const noexcept {
  std::size_t h = std::hash<std::vector<bool>>{}(s.prefix());
  h ^= std::hash<std::vector<bool>>{}(s.period()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}
