#include <gtest/gtest.h>

#include <random>

#include "inferlab/catalog.hpp"
#include "inferlab/restrictions.hpp"
#include "oracle.hpp"

using namespace inferlab;

namespace {

HypSequence seq_of(const std::vector<UPSet>& exts, std::vector<Label> labels = {}) {
  HypSequence p;
  for (std::size_t i = 0; i < exts.size(); ++i)
    p.items.push_back(make_hypothesis(labels.empty() ? 7 : labels[i], exts[i]));
  return p;
}

HypSequence relabel_fresh(HypSequence p) {
  for (std::size_t i = 0; i < p.items.size(); ++i) p.items[i].label = 1000 + i;
  return p;
}

const UPSet kN = UPSet::naturals();
const UPSet kEvens = UPSet::parse("|10");

}  // namespace

TEST(Restrictions, IdsRoundTrip) {
  for (Restriction r : all_restrictions()) EXPECT_EQ(parse_restriction(to_string(r)), r);
  EXPECT_EQ(all_restrictions().size(), 16u);
  EXPECT_EQ(to_string(Restriction::SMonDual), "smon_d");
  EXPECT_THROW(parse_restriction("strong"), std::invalid_argument);
}

TEST(Restrictions, ConsExamples) {
  const Informant cof = Informant::canonical(UPSet::cofinite({1}));
  EXPECT_TRUE(check_cons(run(catalog::learner("COFINITE"), cof, 5), cof).satisfied);
  const Informant nat = Informant::canonical(kN);
  const Verdict v = check_cons(run(catalog::learner("CONST_EMPTY"), nat, 2), nat);
  EXPECT_FALSE(v.satisfied);
  EXPECT_EQ(v.t, 1u);
  EXPECT_TRUE(check_cons(HypSequence{}, nat).satisfied);
}

TEST(Restrictions, MonotoneExamples) {
  const Informant fin = Informant::canonical(UPSet::from_finite({0, 2}));
  EXPECT_TRUE(check_monotone(Restriction::SMon, run(catalog::learner("FIN_POS"), fin, 4), fin).satisfied);

  const Informant ev = Informant::canonical(kEvens);
  const Verdict mon = check_monotone(Restriction::Mon, seq_of({kEvens, UPSet::from_finite({0})}), ev);
  EXPECT_FALSE(mon.satisfied);
  EXPECT_EQ(mon.s, 0u);
  EXPECT_EQ(mon.t, 1u);

  // The segment learner's conjectures on the canonical informant for {0,1}
  // shrink from N to {0,1}.
  const Informant seg = Informant::canonical(UPSet::segment(1));
  const HypSequence ps = run(catalog::learner("SEGMENT"), seg, 4);
  EXPECT_TRUE(check_monotone(Restriction::SMonDual, ps, seg).satisfied);
  EXPECT_EQ(ps[0].extension, kN);
  EXPECT_EQ(ps[3].extension, UPSet::segment(1));
}

TEST(Restrictions, CautiousExamples) {
  const Informant cof = Informant::canonical(UPSet::cofinite({1}));
  const Verdict tar = check_cautious(Restriction::CautTar, run(catalog::learner("COFINITE"), cof, 5), cof);
  EXPECT_FALSE(tar.satisfied);
  EXPECT_EQ(tar.s, 0u);

  const Informant nat = Informant::canonical(kN);
  EXPECT_TRUE(check_cautious(Restriction::Caut, run(catalog::learner("CONST_N"), nat, 6), nat).satisfied);

  const Verdict fin = check_cautious(Restriction::CautFin, seq_of({kN, UPSet::from_finite({0})}), nat);
  EXPECT_FALSE(fin.satisfied);
  EXPECT_EQ(fin.s, 0u);
  EXPECT_EQ(fin.t, 1u);
  EXPECT_TRUE(check_cautious(Restriction::CautInf, seq_of({kN, UPSet::from_finite({0})}), nat).satisfied);
}

TEST(Restrictions, ConvergenceExamples) {
  const Informant cof = Informant::canonical(UPSet::cofinite({1}));
  const Verdict bc = check_bc(run(catalog::learner("COFINITE"), cof, 5), cof.target());
  EXPECT_TRUE(bc.satisfied);
  EXPECT_EQ(bc.stabilization, 2u);

  const Informant ev = Informant::canonical(kEvens);
  EXPECT_FALSE(check_bc(run(catalog::learner("FIN_POS"), ev, 10), kEvens).satisfied);
  const Verdict constant = check_bc(run(catalog::constant_learner(kEvens), ev, 10), kEvens);
  EXPECT_TRUE(constant.satisfied);
  EXPECT_EQ(constant.stabilization, 0u);
  EXPECT_TRUE(check_ex(run(catalog::constant_learner(kEvens), ev, 10), kEvens).satisfied);

  const HypSequence fresh = relabel_fresh(seq_of(std::vector<UPSet>(6, kEvens)));
  EXPECT_TRUE(check_bc(fresh, kEvens).satisfied);
  EXPECT_FALSE(check_ex(fresh, kEvens).satisfied);

  const HypSequence wrong = seq_of(std::vector<UPSet>(6, kN));
  EXPECT_FALSE(check_ex(wrong, kEvens).satisfied);
  EXPECT_FALSE(check_bc(wrong, kEvens).satisfied);

  // One matching label at the very end is not enough for Ex.
  HypSequence late = seq_of({kN, kN, kEvens}, {1, 1, 2});
  EXPECT_TRUE(check_bc(late, kEvens).satisfied);
  EXPECT_FALSE(check_ex(late, kEvens).satisfied);
}

TEST(Restrictions, DelayabilityProbe) {
  const Informant nat = Informant::canonical(kN);
  const HypSequence p = run(catalog::learner("FIN_POS"), nat, 12);
  std::vector<std::size_t> id(12);
  for (std::size_t n = 0; n < 12; ++n) id[n] = n;
  EXPECT_TRUE(probe_delayability(Restriction::SMon, p, nat, nat, id).holds);

  // Each value shown twice in a row; the sequence is replayed at half speed.
  std::vector<Natural> head;
  for (Natural x = 0; x < 12; ++x) head.insert(head.end(), {x, x});
  const Informant doubled = Informant::with_head(kN, head);
  ASSERT_EQ(doubled.values(4), (std::vector<Natural>{0, 0, 1, 1}));
  std::vector<std::size_t> half(20);
  for (std::size_t n = 0; n < 20; ++n) half[n] = n / 2;
  const ProbeResult cons = probe_delayability(Restriction::Cons, p, nat, doubled, half);
  EXPECT_TRUE(cons.original.satisfied);
  EXPECT_FALSE(cons.transformed.satisfied);
  EXPECT_FALSE(cons.holds);

  const Informant ev = Informant::canonical(kEvens);
  const HypSequence pe = run(catalog::constant_learner(kEvens), ev, 12);
  const ProbeResult bc = probe_delayability(Restriction::Bc, pe, ev, ev, half);
  EXPECT_TRUE(bc.holds);
  EXPECT_TRUE(bc.transformed.satisfied);

  EXPECT_THROW(probe_delayability(Restriction::Bc, pe, ev, nat, half), ProbeError);
  std::vector<std::size_t> backwards{2, 1};
  EXPECT_THROW(probe_delayability(Restriction::Bc, pe, ev, ev, backwards), ProbeError);
  std::vector<std::size_t> ahead{0, 5};
  EXPECT_THROW(probe_delayability(Restriction::Bc, pe, ev, ev, ahead), ProbeError);
}

TEST(Restrictions, SemanticProbe) {
  const Informant ev = Informant::canonical(kEvens);
  const HypSequence p = run(catalog::constant_learner(kEvens), ev, 8);
  const HypSequence q = relabel_fresh(p);
  EXPECT_TRUE(probe_semantic(Restriction::Mon, p, q, ev).holds);
  EXPECT_TRUE(probe_semantic(Restriction::Caut, p, q, ev).holds);
  EXPECT_TRUE(probe_semantic(Restriction::Bc, p, q, ev).holds);
  EXPECT_FALSE(probe_semantic(Restriction::Ex, p, q, ev).holds);
  EXPECT_THROW(probe_semantic(Restriction::Ex, p, seq_of(std::vector<UPSet>(8, kN)), ev), ProbeError);
}

namespace {

// Random sequence of small extensions to exercise the checkers.
HypSequence random_sequence(std::mt19937_64& rng, std::size_t length) {
  std::vector<UPSet> pool{UPSet::empty(), kN, kEvens, UPSet::from_finite({0}), UPSet::from_finite({0, 2}),
                          UPSet::segment(3), UPSet::cofinite({1})};
  HypSequence p;
  for (std::size_t i = 0; i < length; ++i)
    p.items.push_back(make_hypothesis(1 + rng() % 3, pool[rng() % pool.size()]));
  return p;
}

}  // namespace

TEST(Restrictions, VerdictsRevalidate) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 300; ++i) {
    const std::vector<UPSet> targets{kEvens, UPSet::from_finite({0, 2}), kN, UPSet::segment(3)};
    const Informant inf = Informant::scheduled(targets[rng() % targets.size()], rng(), {Directive::shuffle(3)});
    const HypSequence p = random_sequence(rng, 1 + rng() % 8);
    for (Restriction r : all_restrictions()) {
      const Verdict v = check(r, p, inf);
      ASSERT_TRUE(revalidate(v, p, inf)) << to_string(r);
      if (!v.satisfied && !is_convergence(r)) {
        Verdict moved = v;
        moved.t = p.size() + 3;
        ASSERT_FALSE(revalidate(moved, p, inf)) << to_string(r);
      }
    }
  }
}

TEST(Restrictions, ViolationsPersistAtLongerHorizons) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 200; ++i) {
    const Informant inf = Informant::scheduled(kEvens, rng(), {Directive::shuffle(2)});
    const HypSequence p = random_sequence(rng, 10);
    for (std::size_t h = 1; h < 10; ++h) {
      HypSequence shorter = p;
      shorter.items.resize(h);
      for (Restriction r : all_restrictions()) {
        if (is_convergence(r)) continue;
        const Verdict a = check(r, shorter, inf);
        if (a.satisfied) continue;
        const Verdict b = check(r, p, inf);
        ASSERT_FALSE(b.satisfied) << to_string(r);
        ASSERT_EQ(a.t, b.t);
        ASSERT_EQ(a.s, b.s);
      }
    }
  }
}

TEST(Restrictions, ExImpliesBcAndLatticeHoldsOnRandomSequences) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 300; ++i) {
    const Informant inf = Informant::canonical(kEvens);
    const HypSequence p = random_sequence(rng, 1 + rng() % 8);
    if (check_ex(p, kEvens).satisfied) {
      ASSERT_TRUE(check_bc(p, kEvens).satisfied);
    }
    const auto failures = lattice_counterexamples(p, inf);
    ASSERT_TRUE(failures.empty()) << failures.front();
  }
}
