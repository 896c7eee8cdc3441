#pragma once

#include <numeric>
#include <random>

#include "inferlab/upset.hpp"

namespace inferlab::testing {

/// Raw, non-canonical (prefix, period) pair evaluated bit by bit.
struct RawSet {
  Bits prefix;
  Bits period;

  bool contains(Natural x) const {
    if (x < prefix.size()) return prefix[x];
    return period[(x - prefix.size()) % period.size()];
  }
};

inline RawSet random_raw(std::mt19937_64& rng, std::size_t max_prefix = 8, std::size_t max_period = 6) {
  RawSet r;
  r.prefix.resize(rng() % (max_prefix + 1));
  r.period.resize(1 + rng() % max_period);
  for (std::size_t i = 0; i < r.prefix.size(); ++i) r.prefix[i] = rng() % 2;
  for (std::size_t i = 0; i < r.period.size(); ++i) r.period[i] = rng() % 2;
  return r;
}

/// Length past which both raw sets repeat jointly, doubled for margin.
inline std::size_t oracle_horizon(const RawSet& a, const RawSet& b) {
  return a.prefix.size() + b.prefix.size() + 2 * std::lcm(a.period.size(), b.period.size());
}

}  // namespace inferlab::testing
