#include <gtest/gtest.h>

#include <random>

#include "inferlab/evidence.hpp"
#include "oracle.hpp"

using namespace inferlab;

namespace {

DataSequence seq(std::string_view text) { return DataSequence::parse(text); }

}  // namespace

TEST(Evidence, Projections) {
  EXPECT_EQ(pos(seq("0:+,3:-,0:+")), (FiniteSet{0}));
  EXPECT_EQ(neg(seq("0:+,3:-")), (FiniteSet{3}));
  EXPECT_EQ(outline(seq("0:+,3:-")), (FiniteSet{0, 3}));
  EXPECT_EQ(content(seq("0:+,3:-,0:+")).size(), 2u);
  EXPECT_TRUE(pos(DataSequence{}).empty());
}

TEST(Evidence, TextRoundTrip) {
  EXPECT_EQ(seq("0:+,1:-,3:+").to_string(), "0:+,1:-,3:+");
  EXPECT_TRUE(seq("").empty());
  EXPECT_EQ(DataSet::parse("3:-,0:+").to_string(), "0:+,3:-");
  EXPECT_THROW(seq("0:*"), std::invalid_argument);
  EXPECT_THROW(seq("a:+"), std::invalid_argument);
}

TEST(Evidence, RejectsContradictoryLabels) {
  EXPECT_THROW(seq("0:+,0:-"), std::invalid_argument);
  DataSequence d = seq("2:-");
  EXPECT_THROW(d.push_back({2, true}), std::invalid_argument);
  EXPECT_THROW(DataSet::parse("1:+,1:-"), std::invalid_argument);
}

TEST(Evidence, CanonicalInformants) {
  EXPECT_EQ(Informant::canonical(UPSet::naturals()).prefix(3), seq("0:+,1:+,2:+"));
  EXPECT_EQ(Informant::canonical(UPSet::cofinite({1})).prefix(3), seq("0:+,1:-,2:+"));
  EXPECT_EQ(Informant::canonical(UPSet::parse("|10")).prefix(4), seq("0:+,1:-,2:+,3:-"));
  EXPECT_TRUE(Informant::canonical(UPSet::naturals()).prefix(0).empty());
  EXPECT_TRUE(Informant::canonical(UPSet::naturals()).is_canonical());
}

TEST(Evidence, ScheduledInformants) {
  const UPSet evens = UPSet::parse("|10");
  EXPECT_EQ(Informant::scheduled(evens, 0, {Directive::swap(0, 1)}).prefix(2), seq("1:-,0:+"));
  EXPECT_EQ(Informant::scheduled(UPSet::naturals(), 4, {Directive::duplicate(0, 3)}).prefix(3),
            seq("0:+,0:+,0:+"));
  const Informant none = Informant::scheduled(UPSet::empty(), 7, {Directive::parse("default")});
  for (std::size_t n = 0; n < 80; ++n) ASSERT_TRUE(pos(none.prefix(n)).empty());
  EXPECT_FALSE(none.is_canonical());
}

TEST(Evidence, DirectiveParsing) {
  EXPECT_EQ(Directive::parse("swap:0:1"), Directive::swap(0, 1));
  EXPECT_EQ(Directive::parse("dup:2:3"), Directive::duplicate(2, 3));
  EXPECT_EQ(Directive::parse("insert:1:5:-"), Directive::insert(1, 5, false));
  EXPECT_EQ(Directive::parse("default"), Directive::shuffle(8));
  EXPECT_EQ(Directive::parse("shuffle:4").to_string(), "shuffle:4");
  EXPECT_THROW(Directive::parse("rotate:1"), std::invalid_argument);
  EXPECT_THROW(Informant::scheduled(UPSet::parse("|10"), 0, {Directive::insert(0, 1, true)}),
               std::invalid_argument);
}

TEST(Evidence, ValidatePrefixFor) {
  const UPSet evens = UPSet::parse("|10");
  EXPECT_TRUE(validate_prefix_for(seq("0:+,1:-"), evens));
  EXPECT_FALSE(validate_prefix_for(seq("1:+"), evens));
  EXPECT_TRUE(validate_prefix_for(DataSequence{}, evens));
}

TEST(Evidence, WithHead) {
  const Informant i = Informant::with_head(UPSet::naturals(), {5, 2});
  EXPECT_EQ(i.values(5), (std::vector<Natural>{5, 2, 0, 1, 3}));
}

namespace {

std::vector<Directive> random_plan(std::mt19937_64& rng) {
  std::vector<Directive> plan;
  if (rng() % 2) plan.push_back(Directive::shuffle(1 + rng() % 10));
  const int k = static_cast<int>(rng() % 4);
  for (int j = 0; j < k; ++j) {
    switch (rng() % 3) {
      case 0: plan.push_back(Directive::swap(rng() % 20, rng() % 20)); break;
      case 1: plan.push_back(Directive::duplicate(rng() % 20, 1 + rng() % 4)); break;
      default: plan.push_back(Directive::insert(rng() % 20, rng() % 30)); break;
    }
  }
  return plan;
}

}  // namespace

TEST(Evidence, CanonicalContentMatchesMembership) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto raw = inferlab::testing::random_raw(rng);
    const UPSet l = UPSet::normalize(raw.prefix, raw.period);
    for (std::size_t n = 0; n < 30; n += 7) {
      DataSet expected;
      for (Natural x = 0; x < n; ++x) expected.insert({x, raw.contains(x)});
      ASSERT_EQ(content(Informant::canonical(l).prefix(n)), expected);
    }
  }
}

TEST(Evidence, ScheduledInformantsAreValidCoveringAndReplayable) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    const auto raw = inferlab::testing::random_raw(rng);
    const UPSet l = UPSet::normalize(raw.prefix, raw.period);
    const std::uint64_t seed = rng();
    const auto plan = random_plan(rng);
    const Informant inf = Informant::scheduled(l, seed, plan);
    const Natural bound = rng() % 40;
    const std::size_t n = inf.coverage_bound(bound);
    const DataSequence d = inf.prefix(n);
    ASSERT_TRUE(validate_prefix_for(d, l)) << inf.describe();
    const FiniteSet shown = outline(d);
    for (Natural x = 0; x <= bound; ++x) ASSERT_TRUE(shown.count(x)) << inf.describe() << " x=" << x;
    ASSERT_EQ(Informant::scheduled(l, seed, plan).prefix(n), d);
  }
}
