#include "inferlab/evidence.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <random>
#include <stdexcept>

namespace inferlab {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto at = s.find(sep, start);
    parts.push_back(s.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return parts;
}

Natural parse_natural(std::string_view s, std::string_view context) {
  s = trim(s);
  Natural value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("expected a natural number in '" + std::string(context) + "'");
  }
  return value;
}

Example parse_example(std::string_view token) {
  token = trim(token);
  const auto colon = token.find(':');
  if (colon == std::string_view::npos || colon + 2 != token.size()) {
    throw std::invalid_argument("malformed example '" + std::string(token) + "', expected x:+ or x:-");
  }
  const char sign = token.back();
  if (sign != '+' && sign != '-') {
    throw std::invalid_argument("malformed example label in '" + std::string(token) + "'");
  }
  return {parse_natural(token.substr(0, colon), token), sign == '+'};
}

template <typename Range>
std::string join_examples(const Range& items) {
  std::string out;
  for (const auto& e : items) {
    if (!out.empty()) out.push_back(',');
    out += to_string(e);
  }
  return out;
}

template <typename Range>
FiniteSet project_range(Projection kind, const Range& items) {
  FiniteSet out;
  for (const Example& e : items) {
    if (kind == Projection::Outline || (kind == Projection::Pos) == e.positive) out.insert(e.value);
  }
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::string to_string(const Example& e) {
  return std::to_string(e.value) + (e.positive ? ":+" : ":-");
}

DataSequence::DataSequence(std::vector<Example> items) {
  std::map<Natural, bool> seen;
  for (const Example& e : items) {
    const auto [it, inserted] = seen.emplace(e.value, e.positive);
    if (!inserted && it->second != e.positive) {
      throw std::invalid_argument("contradictory labels for " + std::to_string(e.value));
    }
  }
  items_ = std::move(items);
}

DataSequence DataSequence::parse(std::string_view text) {
  text = trim(text);
  std::vector<Example> items;
  if (!text.empty()) {
    for (auto token : split(text, ',')) items.push_back(parse_example(token));
  }
  return DataSequence(std::move(items));
}

void DataSequence::push_back(const Example& e) {
  for (const Example& other : items_) {
    if (other.value == e.value && other.positive != e.positive) {
      throw std::invalid_argument("contradictory labels for " + std::to_string(e.value));
    }
  }
  items_.push_back(e);
}

DataSequence DataSequence::prefix(std::size_t n) const {
  DataSequence out;
  out.items_.assign(items_.begin(), items_.begin() + static_cast<std::ptrdiff_t>(std::min(n, items_.size())));
  return out;
}

std::string DataSequence::to_string() const { return join_examples(items_); }

DataSet::DataSet(const std::vector<Example>& items) {
  for (const Example& e : items) insert(e);
}

DataSet DataSet::parse(std::string_view text) {
  return DataSet(DataSequence::parse(text).items());
}

void DataSet::insert(const Example& e) {
  if (items_.count({e.value, !e.positive}) != 0) {
    throw std::invalid_argument("contradictory labels for " + std::to_string(e.value));
  }
  items_.insert(e);
}

std::string DataSet::to_string() const { return join_examples(items_); }

FiniteSet project(Projection kind, const DataSequence& d) { return project_range(kind, d.items()); }
FiniteSet project(Projection kind, const DataSet& d) { return project_range(kind, d.items()); }

DataSet content(const DataSequence& d) { return DataSet(d.items()); }

bool validate_prefix_for(const DataSequence& d, const UPSet& target) {
  return std::all_of(d.begin(), d.end(),
                     [&](const Example& e) { return e.positive == target.contains(e.value); });
}

Directive Directive::parse(std::string_view text) {
  text = trim(text);
  if (text == "default") return shuffle(8);
  const auto parts = split(text, ':');
  const auto name = parts.front();
  auto arg = [&](std::size_t i) { return parse_natural(parts.at(i), text); };
  if (name == "shuffle" && parts.size() == 2) {
    const auto width = arg(1);
    if (width == 0) throw std::invalid_argument("shuffle width must be positive");
    return shuffle(width);
  }
  if (name == "swap" && parts.size() == 3) return swap(arg(1), arg(2));
  if (name == "dup" && parts.size() == 3) {
    const auto times = arg(2);
    if (times == 0) throw std::invalid_argument("dup count must be positive");
    return duplicate(arg(1), times);
  }
  if (name == "insert" && (parts.size() == 3 || parts.size() == 4)) {
    std::optional<bool> label;
    if (parts.size() == 4) {
      const auto l = trim(parts[3]);
      if (l != "+" && l != "-") throw std::invalid_argument("insert label must be + or -");
      label = l == "+";
    }
    return insert(arg(1), arg(2), label);
  }
  throw std::invalid_argument("unknown schedule directive '" + std::string(text) + "'");
}

std::string Directive::to_string() const {
  switch (kind) {
    case Kind::Shuffle: return "shuffle:" + std::to_string(first);
    case Kind::Swap: return "swap:" + std::to_string(first) + ":" + std::to_string(second);
    case Kind::Duplicate: return "dup:" + std::to_string(first) + ":" + std::to_string(second);
    case Kind::Insert: {
      std::string out = "insert:" + std::to_string(first) + ":" + std::to_string(second);
      if (label) out += *label ? ":+" : ":-";
      return out;
    }
  }
  return "?";
}

Informant::Informant(UPSet target, std::uint64_t seed, std::vector<Natural> head,
                     std::vector<Directive> plan)
    : target_(std::move(target)), seed_(seed), head_(std::move(head)), plan_(std::move(plan)) {}

Informant Informant::canonical(UPSet target) { return Informant(std::move(target), 0, {}, {}); }

Informant Informant::scheduled(UPSet target, std::uint64_t seed, std::vector<Directive> plan) {
  std::size_t shuffles = 0;
  for (const Directive& d : plan) {
    switch (d.kind) {
      case Directive::Kind::Shuffle:
        if (d.first == 0) throw std::invalid_argument("shuffle width must be positive");
        ++shuffles;
        break;
      case Directive::Kind::Duplicate:
        if (d.second == 0) throw std::invalid_argument("dup count must be positive");
        break;
      case Directive::Kind::Insert:
        if (d.label && *d.label != target.contains(d.second)) {
          throw std::invalid_argument("directive " + d.to_string() + " labels " +
                                      std::to_string(d.second) + " wrongly for target " +
                                      target.to_string());
        }
        break;
      case Directive::Kind::Swap: break;
    }
  }
  if (shuffles > 1) throw std::invalid_argument("at most one shuffle directive per schedule");
  return Informant(std::move(target), seed, {}, std::move(plan));
}

Informant Informant::with_head(UPSet target, std::vector<Natural> head) {
  return Informant(std::move(target), 0, std::move(head), {});
}

bool Informant::is_canonical() const { return head_.empty() && plan_.empty(); }

std::size_t Informant::shuffle_width() const {
  for (const Directive& d : plan_)
    if (d.kind == Directive::Kind::Shuffle) return d.first;
  return 1;
}

std::size_t Informant::max_referenced_position() const {
  std::size_t m = 0;
  for (const Directive& d : plan_) {
    switch (d.kind) {
      case Directive::Kind::Swap: m = std::max({m, d.first, d.second}); break;
      case Directive::Kind::Duplicate:
      case Directive::Kind::Insert: m = std::max(m, d.first); break;
      case Directive::Kind::Shuffle: break;
    }
  }
  return m;
}

std::size_t Informant::inserted_count() const {
  std::size_t n = 0;
  for (const Directive& d : plan_) {
    if (d.kind == Directive::Kind::Duplicate) n += d.second - 1;
    if (d.kind == Directive::Kind::Insert) ++n;
  }
  return n;
}

std::vector<Natural> Informant::values(std::size_t n) const {
  const std::size_t width = shuffle_width();
  const std::size_t needed = n + max_referenced_position() + 1;
  std::vector<Natural> seq = head_;
  const FiniteSet in_head(head_.begin(), head_.end());
  std::vector<Natural> block(width);
  for (std::uint64_t k = 0; seq.size() < needed; ++k) {
    for (std::size_t i = 0; i < width; ++i) block[i] = k * width + i;
    if (width > 1) {
      std::mt19937_64 rng(splitmix64(seed_ ^ splitmix64(k)));
      for (std::size_t i = width - 1; i > 0; --i) std::swap(block[i], block[rng() % (i + 1)]);
    }
    for (Natural x : block)
      if (in_head.count(x) == 0) seq.push_back(x);
  }
  for (const Directive& d : plan_) {
    switch (d.kind) {
      case Directive::Kind::Swap: std::swap(seq[d.first], seq[d.second]); break;
      case Directive::Kind::Duplicate:
        seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(d.first) + 1, d.second - 1, seq[d.first]);
        break;
      case Directive::Kind::Insert:
        seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(d.first), d.second);
        break;
      case Directive::Kind::Shuffle: break;
    }
  }
  seq.resize(n);
  return seq;
}

Example Informant::at(std::size_t i) const {
  const Natural x = values(i + 1).back();
  return {x, target_.contains(x)};
}

DataSequence Informant::prefix(std::size_t n) const {
  std::vector<Example> items;
  items.reserve(n);
  for (Natural x : values(n)) items.push_back({x, target_.contains(x)});
  return DataSequence(std::move(items));
}

std::size_t Informant::coverage_bound(Natural bound) const {
  const std::size_t width = shuffle_width();
  const std::size_t backbone = head_.size() + (bound / width + 1) * width;
  return std::max(backbone, max_referenced_position() + 1) + inserted_count();
}

std::string Informant::describe() const {
  std::string out = "target=" + target_.to_string();
  if (!head_.empty()) {
    out += " head=[";
    for (std::size_t i = 0; i < head_.size(); ++i) {
      if (i) out.push_back(',');
      out += std::to_string(head_[i]);
    }
    out.push_back(']');
  }
  if (plan_.empty()) return head_.empty() ? out + " canonical" : out;
  out += " seed=" + std::to_string(seed_) + " plan=[";
  for (std::size_t i = 0; i < plan_.size(); ++i) {
    if (i) out.push_back(',');
    out += plan_[i].to_string();
  }
  return out + "]";
}

}  // namespace inferlab
