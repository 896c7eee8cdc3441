#include "inferlab/hypothesis.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <stdexcept>

namespace inferlab {
namespace {

constexpr Natural kNaturalMax = std::numeric_limits<Natural>::max();

Natural saturating_affine(Natural slope, Natural x, Natural offset) {
  if (x != 0 && slope > kNaturalMax / x) return kNaturalMax;
  const Natural product = slope * x;
  return product > kNaturalMax - offset ? kNaturalMax : product + offset;
}

Natural parse_natural(std::string_view s) {
  Natural value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("expected a natural number, got '" + std::string(s) + "'");
  }
  return value;
}

template <typename Set>
bool consistent_with(const Set& s, const FiniteSet& positives, const FiniteSet& negatives) {
  auto in = [&](Natural x) {
    if constexpr (std::is_same_v<Set, UPSet>) {
      return s.contains(x);
    } else {
      return s.count(x) != 0;
    }
  };
  return std::all_of(positives.begin(), positives.end(), in) &&
         std::none_of(negatives.begin(), negatives.end(), in);
}

}  // namespace

Label program_label(std::string_view program_text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : program_text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h == kEmptyConjectureLabel ? 1 : h;
}

Natural DelaySchedule::operator()(Natural x) const {
  if (auto it = overrides.find(x); it != overrides.end()) return it->second;
  return std::max(x, saturating_affine(slope, x, offset));
}

std::string DelaySchedule::to_string() const {
  std::string out = std::to_string(slope) + "," + std::to_string(offset);
  bool first = true;
  for (const auto& [x, t] : overrides) {
    out += first ? ";" : ",";
    first = false;
    out += std::to_string(x) + "->" + std::to_string(t);
  }
  return out;
}

DelaySchedule DelaySchedule::parse(std::string_view text) {
  DelaySchedule d;
  const auto semi = text.find(';');
  const auto affine = text.substr(0, semi);
  const auto comma = affine.find(',');
  if (comma == std::string_view::npos) {
    throw std::invalid_argument("delay must start with 'a,b': '" + std::string(text) + "'");
  }
  d.slope = parse_natural(affine.substr(0, comma));
  d.offset = parse_natural(affine.substr(comma + 1));
  if (semi == std::string_view::npos) return d;
  std::string_view rest = text.substr(semi + 1);
  while (!rest.empty()) {
    const auto next = rest.find(',');
    const auto entry = rest.substr(0, next);
    std::size_t arrow_len = 2;
    auto arrow = entry.find("->");
    if (arrow == std::string_view::npos) {
      arrow = entry.find("\xE2\x86\x92");  // U+2192
      arrow_len = 3;
    }
    if (arrow == std::string_view::npos) {
      throw std::invalid_argument("delay override must be 'x->t': '" + std::string(entry) + "'");
    }
    d.overrides[parse_natural(entry.substr(0, arrow))] = parse_natural(entry.substr(arrow + arrow_len));
    if (next == std::string_view::npos) break;
    rest.remove_prefix(next + 1);
  }
  return d;
}

std::string Hypothesis::to_string() const {
  return "label=" + std::to_string(label) + " ext=" + extension.to_string() + " delay=" + delay.to_string();
}

Hypothesis Hypothesis::parse(std::string_view text) {
  Hypothesis h;
  bool have_label = false, have_ext = false;
  while (!text.empty()) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    if (text.empty()) break;
    const auto space = text.find(' ');
    const auto field = text.substr(0, space);
    const auto eq = field.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("hypothesis field must be key=value: '" + std::string(field) + "'");
    }
    const auto key = field.substr(0, eq);
    const auto value = field.substr(eq + 1);
    if (key == "label") {
      h.label = parse_natural(value);
      have_label = true;
    } else if (key == "ext") {
      h.extension = UPSet::parse(value);
      have_ext = true;
    } else if (key == "delay") {
      h.delay = DelaySchedule::parse(value);
    } else {
      throw std::invalid_argument("unknown hypothesis field '" + std::string(key) + "'");
    }
    if (space == std::string_view::npos) break;
    text.remove_prefix(space + 1);
  }
  if (!have_label || !have_ext) throw std::invalid_argument("hypothesis needs label= and ext=");
  return with_delay(h, h.delay.overrides, h.delay.slope, h.delay.offset);
}

FiniteSet stage_enumerate(const Hypothesis& h, Natural t) {
  FiniteSet out;
  for (Natural x = 0; x <= t; ++x) {
    if (h.extension.contains(x) && h.delay(x) <= t) out.insert(x);
    if (x == kNaturalMax) break;
  }
  return out;
}

bool consistent(const UPSet& s, const FiniteSet& positives, const FiniteSet& negatives) {
  return consistent_with(s, positives, negatives);
}
bool consistent(const UPSet& s, const DataSequence& d) { return consistent_with(s, pos(d), neg(d)); }
bool consistent(const UPSet& s, const DataSet& d) { return consistent_with(s, pos(d), neg(d)); }
bool consistent(const FiniteSet& s, const DataSequence& d) { return consistent_with(s, pos(d), neg(d)); }
bool consistent(const FiniteSet& s, const DataSet& d) { return consistent_with(s, pos(d), neg(d)); }

bool sem_equiv(const Hypothesis& a, const Hypothesis& b) { return a.extension == b.extension; }

Hypothesis with_delay(const Hypothesis& h, std::map<Natural, Natural> overrides, Natural slope,
                      Natural offset) {
  if (slope == 0) throw std::invalid_argument("delay slope must be at least 1");
  for (const auto& [x, t] : overrides) {
    if (!h.extension.contains(x)) {
      throw std::invalid_argument("delay override on non-member " + std::to_string(x));
    }
    if (t < x) {
      throw std::invalid_argument("delay override " + std::to_string(x) + "->" + std::to_string(t) +
                                  " is below its argument");
    }
  }
  Hypothesis out = h;
  out.delay = DelaySchedule{slope, offset, std::move(overrides)};
  return out;
}

}  // namespace inferlab
