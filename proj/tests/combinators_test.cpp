#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <random>

#include "inferlab/catalog.hpp"
#include "inferlab/combinators.hpp"
#include "inferlab/restrictions.hpp"
#include "oracle.hpp"

using namespace inferlab;

namespace {

const UPSet kN = UPSet::naturals();
const UPSet kEvens = UPSet::parse("|10");

DataSet set_of(std::string_view text) { return DataSet::parse(text); }

Learner constant_g(const UPSet& u) {
  return Learner::gold("K", [u](const DataSequence&) { return make_hypothesis(5, u); });
}

// Independent evaluation of the consistent weakly monotone wrapper, truncated
// to [0, T]: pos(sigma) plus, for each e in {h(sigma)} and the wrapper's own
// conjectures on proper prefixes, every stage W_e^t (t <= T) consistent with
// sigma.
class WrapperOracle {
 public:
  static constexpr Natural T = 160;

  explicit WrapperOracle(Learner h) : h_(std::move(h)) {}

  FiniteSet eval(const DataSequence& sigma) {
    const std::string key = sigma.to_string();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    FiniteSet out = pos(sigma);
    auto add_stages = [&](const std::function<FiniteSet(Natural)>& stage) {
      for (Natural t = 0; t <= T; ++t) {
        const FiniteSet w = stage(t);
        if (consistent(w, sigma)) out.insert(w.begin(), w.end());
      }
    };
    const Hypothesis inner = h_.conjecture_on(sigma);
    add_stages([&](Natural t) { return stage_enumerate(inner, t); });
    for (std::size_t k = 0; k < sigma.size(); ++k) {
      const FiniteSet earlier = eval(sigma.prefix(k));
      // Default delay: stage t is everything up to t.
      add_stages([&](Natural t) {
        FiniteSet w;
        for (Natural x : earlier)
          if (x <= t) w.insert(x);
        return w;
      });
    }
    memo_[key] = out;
    return out;
  }

 private:
  Learner h_;
  std::map<std::string, FiniteSet> memo_;
};

}  // namespace

TEST(Combinators, PrefixLength) {
  EXPECT_EQ(prefix_length(set_of("0:+,1:-,3:+")), 2u);
  EXPECT_EQ(prefix_length(DataSet{}), 0u);
  EXPECT_EQ(prefix_length(set_of("0:+,1:+,2:-")), 3u);
  EXPECT_EQ(canonical_prefix(set_of("0:+,1:-,3:+")), DataSequence::parse("0:+,1:-"));
  EXPECT_TRUE(canonical_prefix(DataSet{}).empty());
  const DataSequence p = Informant::canonical(kEvens).prefix(5);
  EXPECT_EQ(canonical_prefix(content(p)), p);
}

TEST(Combinators, ToSetDrivenExamples) {
  const Learner cof = catalog::learner("COFINITE");
  const Learner g = to_set_driven(cof);
  EXPECT_EQ(g.interface(), Interface::Sd);
  const Informant inf = Informant::canonical(UPSet::cofinite({1}));
  EXPECT_EQ(g.conjecture_on(inf.prefix(3)), cof.conjecture_on(inf.prefix(3)));

  const Learner fin = to_set_driven(catalog::learner("FIN_POS"));
  const Informant late = Informant::scheduled(UPSet::from_finite({0}), 0, {Directive::insert(0, 5)});
  ASSERT_EQ(late.prefix(2), DataSequence::parse("5:-,0:+"));
  EXPECT_EQ(fin.conjecture_on(late.prefix(1)).extension, UPSet::empty());
  EXPECT_EQ(fin.conjecture_on(late.prefix(2)).extension, UPSet::from_finite({0}));
}

TEST(Combinators, ToSetDrivenIsPointwiseIdentity) {
  std::mt19937_64 rng(14);
  const char* ids[] = {"SEGMENT", "STREAM_MON", "MEMORIZER", "ITER_POS"};
  for (int i = 0; i < 100; ++i) {
    const Learner h = catalog::learner(ids[i % 4]);
    const Learner g = to_set_driven(h);
    const auto raw = inferlab::testing::random_raw(rng, 5, 4);
    const UPSet l = UPSet::normalize(raw.prefix, raw.period);
    const Informant inf = Informant::scheduled(l, rng(), {Directive::shuffle(1 + rng() % 5)});
    for (std::size_t n = 0; n < 15; ++n) {
      const DataSet c = content(inf.prefix(n));
      ASSERT_EQ(g.on_content(c), h.conjecture_on(Informant::canonical(l).prefix(prefix_length(c))));
    }
  }
}

TEST(Combinators, PatchExamples) {
  const Hypothesis e = make_hypothesis(3, kEvens);
  const Hypothesis p = patch(e, set_of("1:+,2:-"));
  EXPECT_EQ(p.extension, UPSet::parse("1100|10"));
  EXPECT_EQ(p.extension.to_string(), "110|01");
  for (Natural x = 0; x <= 20; ++x) EXPECT_EQ(p.extension.contains(x), x == 0 || x == 1 || (x >= 4 && x % 2 == 0));
  EXPECT_TRUE(consistent(p.extension, set_of("1:+,2:-")));
  EXPECT_EQ(patch(e, DataSet{}).extension, kEvens);
  EXPECT_NE(patch(e, set_of("1:+")).label, patch(e, set_of("3:+")).label);

  const Learner patched = patched_learner(catalog::learner("CONST_EMPTY"));
  EXPECT_EQ(patched.interface(), Interface::Sd);
  const Informant one = Informant::canonical(UPSet::from_finite({0}));
  EXPECT_EQ(patched.conjecture_on(one.prefix(1)).extension, UPSet::from_finite({0}));
  EXPECT_EQ(patched_learner(catalog::learner("SEGMENT")).interface(), Interface::G);
}

TEST(Combinators, PatchLemmas) {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 300; ++i) {
    const auto raw = inferlab::testing::random_raw(rng);
    const Hypothesis e = make_hypothesis(1, UPSet::normalize(raw.prefix, raw.period));
    DataSet d;
    std::map<Natural, bool> labels;
    for (int k = 0; k < 6; ++k) labels[rng() % 15] = rng() % 2;
    for (auto [x, b] : labels) d.insert({x, b});
    ASSERT_TRUE(consistent(patch(e, d).extension, d));
    const Informant inf = Informant::scheduled(e.extension, rng(), {Directive::shuffle(4)});
    ASSERT_TRUE(sem_equiv(patch(e, content(inf.prefix(rng() % 20))), e));
  }
}

TEST(Combinators, ConsWmonEmptySequence) {
  const Learner h = catalog::learner("SEGMENT");
  const Learner g = cons_wmon_wrapper(h);
  EXPECT_EQ(g.conjecture_on(DataSequence{}).extension, h.conjecture_on(DataSequence{}).extension);
}

TEST(Combinators, ConsWmonDropsAlwaysInconsistentInner) {
  // The inner conjecture contains a shown negative from stage 0 on.
  const Learner g = cons_wmon_wrapper(constant_g(UPSet::from_finite({0, 1})));
  const DataSequence sigma = DataSequence::parse("0:-,3:+");
  EXPECT_EQ(g.conjecture_on(sigma).extension, UPSet::from_finite({3}));
}

TEST(Combinators, ConsWmonMatchesStageOracle) {
  std::mt19937_64 rng(16);
  const char* ids[] = {"COFINITE", "STREAM_MON", "SEGMENT", "MAXPOS", "CONST_N", "MEMORIZER"};
  for (int i = 0; i < 30; ++i) {
    const Learner h = catalog::learner(ids[i % 6]);
    const Learner g = cons_wmon_wrapper(h);
    WrapperOracle oracle(h);
    const auto raw = inferlab::testing::random_raw(rng, 4, 3);
    const UPSet l = UPSet::normalize(raw.prefix, raw.period);
    const Informant inf = Informant::scheduled(l, rng(), {Directive::shuffle(3)});
    for (std::size_t n = 0; n < 7; ++n) {
      const DataSequence sigma = inf.prefix(n);
      const UPSet out = g.conjecture_on(sigma).extension;
      const FiniteSet expected = oracle.eval(sigma);
      for (Natural x = 0; x <= 60; ++x) ASSERT_EQ(out.contains(x), expected.count(x) != 0) << ids[i % 6] << " " << sigma.to_string() << " x=" << x;
    }
  }
}

TEST(Combinators, PoisonCases) {
  const Learner none = dual_wmon_poison(catalog::learner("CONST_EMPTY"));
  const Informant one = Informant::canonical(UPSet::from_finite({0}));
  for (std::size_t n = 1; n < 6; ++n) EXPECT_EQ(none.conjecture_on(one.prefix(n)).extension, UPSet::from_finite({0}));

  const Learner all = dual_wmon_poison(catalog::learner("CONST_N"));
  const Informant ev = Informant::canonical(kEvens);
  EXPECT_EQ(all.conjecture_on(ev.prefix(1)).extension, kN);
  EXPECT_EQ(all.conjecture_on(ev.prefix(2)).extension, UPSet::cofinite({1}));

  const Learner right = dual_wmon_poison(catalog::constant_learner(kEvens));
  for (std::size_t n = 0; n < 8; ++n) EXPECT_EQ(right.conjecture_on(ev.prefix(n)).extension, kEvens);

  // Non-set-driven input goes through to_sd first.
  const Learner seg = dual_wmon_poison(catalog::learner("SEGMENT"));
  EXPECT_EQ(seg.conjecture_on(Informant::canonical(UPSet::segment(2)).prefix(5)).extension, UPSet::segment(2));
}

TEST(Combinators, FourcaseCases) {
  const Informant ev = Informant::canonical(kEvens);
  const Learner pass = cons_wmon_fourcase(catalog::constant_learner(kEvens));
  EXPECT_EQ(pass.conjecture_on(ev.prefix(3)).extension, kEvens);
  const Learner small = cons_wmon_fourcase(constant_g(UPSet::empty()));
  EXPECT_EQ(small.conjecture_on(ev.prefix(3)).extension, UPSet::from_finite({0, 2}));

  // Inconsistent early, consistent once three items are shown: the neg-repeat
  // case keeps N \ neg instead of switching to the inner conjecture.
  const Learner shifty = Learner::gold("SHIFTY", [](const DataSequence& d) {
    return make_hypothesis(9, d.size() < 3 ? UPSet::from_finite({0, 1, 2}) : UPSet::from_finite({0, 2}));
  });
  const Learner four = cons_wmon_fourcase(shifty);
  EXPECT_EQ(four.conjecture_on(ev.prefix(2)).extension, UPSet::cofinite({1}));
  EXPECT_EQ(four.conjecture_on(ev.prefix(3)).extension, UPSet::cofinite({1}));
  // Repeating an item does not change the output.
  const DataSequence repeated = DataSequence::parse("0:+,1:-,0:+");
  EXPECT_EQ(four.conjecture_on(repeated), four.conjecture_on(ev.prefix(2)));
}

TEST(Combinators, WrappersAreConsistentOnSampledRuns) {
  std::mt19937_64 rng(18);
  const char* ids[] = {"COFINITE", "SEGMENT", "CONST_N", "CONST_EMPTY", "MAXPOS"};
  for (int i = 0; i < 20; ++i) {
    const Learner h = catalog::learner(ids[i % 5]);
    const auto raw = inferlab::testing::random_raw(rng, 4, 3);
    const Informant inf = Informant::scheduled(UPSet::normalize(raw.prefix, raw.period), rng(), {Directive::shuffle(2)});
    const HypSequence inner = run(h, inf, 12);
    const HypSequence a = run(cons_wmon_wrapper(h), inf, 12);
    EXPECT_TRUE(check_cons(a, inf).satisfied);
    EXPECT_TRUE(check_monotone(Restriction::WMon, a, inf).satisfied);
    const HypSequence b = run(dual_wmon_poison(h), inf, 12);
    EXPECT_TRUE(check_cons(b, inf).satisfied);
    const HypSequence to_sd_inner = run(to_set_driven(h), inf, 12);
    if (check_monotone(Restriction::WMonDual, to_sd_inner, inf).satisfied) {
      EXPECT_TRUE(check_monotone(Restriction::WMonDual, b, inf).satisfied);
    }
    const HypSequence c = run(cons_wmon_fourcase(h), inf, 12);
    EXPECT_TRUE(check_cons(c, inf).satisfied);
    if (check_monotone(Restriction::WMon, inner, inf).satisfied) {
      EXPECT_TRUE(check_monotone(Restriction::WMon, c, inf).satisfied);
    }
  }
}

TEST(Combinators, Pipelines) {
  EXPECT_EQ(combinator_ids().size(), 5u);
  const Learner l = apply_pipeline(catalog::learner("COFINITE"), {"to_sd", "patch"});
  EXPECT_EQ(l.interface(), Interface::Sd);
  EXPECT_THROW(apply_combinator("unknown", l), std::invalid_argument);
}
