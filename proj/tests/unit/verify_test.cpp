#include <gtest/gtest.h>

#include "helpers.hpp"
#include "interval_oracle.hpp"
#include "rank1/verify.hpp"

using namespace rank1;
using namespace testing_helpers;

TEST(Ornstein, ExampleAndPrimes) {
  const auto s = algebraic(1, {5});
  EXPECT_EQ(spacer_drifts(s, 1, 1).front(), 1);  // S(1,1) = s(2) - H
  EXPECT_EQ(spacer_drifts(s, 1, 0), std::vector<BigInt>(4, BigInt(0)));
  const auto p = algebraic(1, {5, 7, 11, 13});
  for (std::size_t j = 1; j <= 4; ++j) {
    const auto rep = verify_ornstein(p, j);
    EXPECT_EQ(rep.verdict, Verdict::Pass);
    EXPECT_TRUE(rep.witnesses.empty());
    EXPECT_GT(rep.stat("checks"), 0u);
  }
}

TEST(Ornstein, DetectsLargeDrift) {
  const auto s = algebraic(1, {5});
  StageSpec bad = s.stage(1);
  bad.spacers[1] += 10;
  const auto rep = verify_ornstein(bad, BigInt(5), 1);
  ASSERT_EQ(rep.verdict, Verdict::Fail);
  const Witness& w = rep.witnesses.front();
  const auto drifts = spacer_drifts(bad, BigInt(5), std::stoull(w.at("n")));
  EXPECT_EQ(to_string(drifts[std::stoull(w.at("i")) - 1]), w.at("S"));
}

TEST(Injectivity, ExampleValues) {
  const auto s = algebraic(1, {5});
  EXPECT_EQ(spacer_drifts(s, 1, 1), (std::vector<BigInt>{1, 2, -1}));
  EXPECT_EQ(verify_injectivity(s, 1).verdict, Verdict::Pass);
}

TEST(Injectivity, CorruptedSpacersGiveWitness) {
  const auto s = algebraic(1, {5});
  StageSpec bad = s.stage(1);
  bad.spacers[1] = bad.spacers[2];  // (3, 7, 7, 4, 0)
  const auto rep = verify_injectivity(bad, BigInt(5), 1);
  ASSERT_EQ(rep.verdict, Verdict::Fail);
  const Witness& w = rep.witnesses.front();
  EXPECT_EQ(w.at("n"), "1");
  EXPECT_EQ(w.at("i"), "1");
  EXPECT_EQ(w.at("i_prime"), "2");
  const auto d = spacer_drifts(bad, BigInt(5), 1);
  EXPECT_EQ(d[0], d[1]);
}

TEST(Sidon, GrowthScheduleStagesPass) {
  const auto s = sidon(1, {3, 4, 5, 6});
  for (std::size_t j = 1; j <= 3; ++j) {
    const auto rep = verify_sidon(s, j, 1'000'000);
    EXPECT_EQ(rep.verdict, Verdict::Pass) << j;
    EXPECT_EQ(rep.stat("exhaustive"), 1u);
    EXPECT_EQ(rep.stat("checks"), s.height(j + 1) - s.height(j));
  }
  const auto big = verify_sidon(s, 4, 1000);
  EXPECT_EQ(big.verdict, Verdict::Pass);
  EXPECT_EQ(big.stat("critical_points"), 1u);
}

TEST(Sidon, EqualSpacersFail) {
  const long long c = 4;
  const auto s = explicit_schedule(1, {stage(3, {c, c, c})});
  const auto rep = verify_sidon(s, 1, 1000);
  ASSERT_EQ(rep.verdict, Verdict::Fail);
  // columns 1-2 and 2-3 are both aligned by m = h + 1 + c
  const BigInt m = s.height(1) + 1 + c;
  EXPECT_GE(aligned_column_pairs(s, 1, m), 2u);
  const Witness& w = rep.witnesses.front();
  EXPECT_GE(aligned_column_pairs(s, 1, parse_bigint(w.at("m"))), 2u);
  // the sampled path reaches the same verdict
  EXPECT_EQ(verify_sidon(s, 1, 2).verdict, Verdict::Fail);
}

TEST(Sidon, TwoColumnsAlwaysPass) {
  const auto s = explicit_schedule(3, {stage(2, {4, 0})});
  EXPECT_EQ(verify_sidon(s, 1, 1000).verdict, Verdict::Pass);
}

TEST(Decay, SqrtStubWithUnitConstant) {
  const auto s = sidon(2, {3, 4, 5});
  Rng rng(1);
  const auto shifts = decay_sample_shifts(s, 1, 20, rng);
  ASSERT_FALSE(shifts.empty());
  for (const BigInt& m : shifts) {
    EXPECT_GT(m, s.height(1));
    EXPECT_LE(m, s.height(3));
  }
  const auto rep = verify_decay(s, base_level(s, 1), SlowFunction::Sqrt, Rational(1), shifts);
  EXPECT_EQ(rep.verdict, Verdict::Pass);
  EXPECT_EQ(rep.stat("checks"), shifts.size());
}

TEST(Decay, FittedConstantPassesAndSmallerFails) {
  DecayOptions opts;
  opts.spacing = DecaySpacing::SidonSet;
  const auto s = decay_rate_schedule(BigInt(2), SlowFunction::Ln, Rational(1), 3, opts);
  const LevelSet A = base_level(s, 1);
  Rng rng(3);
  const auto shifts = decay_sample_shifts(s, 1, 30, rng);
  const Rational C = fit_decay_constant(s, A, SlowFunction::Ln, shifts);
  ASSERT_GT(C, 0);
  EXPECT_EQ(verify_decay(s, A, SlowFunction::Ln, C, shifts).verdict, Verdict::Pass);
  const auto rep = verify_decay(s, A, SlowFunction::Ln, C / 2, shifts);
  EXPECT_EQ(rep.verdict, Verdict::Fail);
  EXPECT_FALSE(rep.witnesses.empty());
}

TEST(Decay, ChainConstantCoversEveryStage) {
  DecayOptions opts;
  opts.spacing = DecaySpacing::SidonSet;
  const auto s = decay_rate_schedule(BigInt(2), SlowFunction::Ln, Rational(1), 3, opts);
  const LevelSet A = base_level(s, 1);
  const Rational C = chain_decay_constant(s, A);
  for (std::size_t j = 1; j + 2 <= s.tower_count(); ++j) {
    const Rational term = measure(s, A) / s.cuts(j);
    EXPECT_GE(C * C, term * term * Rational(s.height(j + 1), s.height(j))) << "j=" << j;
  }
  Rng rng(4);
  const auto shifts = decay_sample_shifts(s, 1, 30, rng);
  EXPECT_EQ(verify_decay(s, A, SlowFunction::Ln, C, shifts).verdict, Verdict::Pass);

  // r_2 = 2 here: a constant fitted on stage 1 alone is too small for stage 2
  std::vector<BigInt> first;
  for (const BigInt& m : shifts)
    if (m <= s.height(2)) first.push_back(m);
  const Rational C1 = fit_decay_constant(s, A, SlowFunction::Ln, first);
  EXPECT_LT(C1, C);
  EXPECT_EQ(verify_decay(s, A, SlowFunction::Ln, C1, shifts).verdict, Verdict::Fail);
}

TEST(Joining, DiagonalIsTheIdentity) {
  for (const auto& s : {sidon(1, {3, 4, 5}), algebraic(1, {5, 7, 11})}) {
    for (std::size_t j = 1; j <= 3; ++j) {
      const auto co = joining_coefficients(s, j, BigInt(0));
      ASSERT_EQ(co.a.size(), 1u);
      EXPECT_EQ(co.at(0).lower, 1);
      EXPECT_TRUE(co.exact);
      EXPECT_EQ(verify_joining_mass(s, j, BigInt(0)).verdict, Verdict::Pass);
    }
  }
}

TEST(Joining, SmallShiftAgreesWithIntervalModel) {
  const auto s = explicit_schedule(2, {stage(3, {1, 0, 4}), stage(2, {3, 9})});
  const oracle::IntervalModel model(s);
  const std::size_t j = 1;
  const long long h = 2;
  for (long long l = -4; l <= 4; ++l) {
    const auto co = joining_coefficients(s, j, BigInt(l));
    for (long long k = -h; k <= h; ++k) {
      // a^k = mu(T^l E_j ∩ T^k E_j)/mu(E_j) = mu(T^{l-k} E_j ∩ E_j)/mu(E_j)
      const long long d = l - k;
      const auto ans = model.correlation(j, {0}, {0}, d);
      EXPECT_EQ(co.at(BigInt(k)).lower, ans.lower) << "l=" << l << " k=" << k;
      EXPECT_EQ(co.at(BigInt(k)).upper, ans.upper) << "l=" << l << " k=" << k;
    }
    if (l >= 0 && l <= h) EXPECT_EQ(co.at(BigInt(l)).lower, 1);
    EXPECT_LE(co.mass_upper, 2);
  }
}

TEST(Lemma, FullTowerOnTheDiagonal) {
  const auto s = sidon(1, {3, 4, 5});
  for (std::size_t j = 1; j <= 2; ++j) {
    const auto rep = verify_lemma_decomposition(s, j, BigInt(0), full_tower(s, j), full_tower(s, j));
    EXPECT_EQ(rep.verdict, Verdict::Pass);
    EXPECT_EQ(rep.stat("exact"), 1u);
  }
  const auto counts = block_counts(full_tower(s, 1), full_tower(s, 1));
  EXPECT_EQ(counts.at(BigInt(0)), 2u);
  EXPECT_EQ(counts.at(BigInt(1)), 1u);
}

TEST(Lemma, SingleLevels) {
  const auto s = sidon(1, {3, 4, 5});
  const std::size_t j = 2;
  for (long long k0 : {0LL, 3LL, 20LL}) {
    for (long long l : {-60LL, 1LL, 17LL, 400LL}) {
      const LevelSet A = levels(s, j, {5});
      const LevelSet B = levels(s, j, {5 + k0});
      const auto rep = verify_lemma_decomposition(s, j, BigInt(l), A, B);
      EXPECT_EQ(rep.verdict, Verdict::Pass) << "k0=" << k0 << " l=" << l;
      const auto co = joining_coefficients(s, j, BigInt(l));
      const auto lhs = correlation(s, A, B, BigInt(l), Rational(0));
      EXPECT_EQ(lhs.lower, s.base_measure(j) * co.at(BigInt(k0)).lower);
    }
  }
}

TEST(Reports, CombineVerdicts) {
  VerificationReport a, b, c;
  b.undecided(Witness{}.add("m", BigInt(3)));
  c.fail(Witness{}.add("m", BigInt(4)));
  EXPECT_EQ(combine({a}), Verdict::Pass);
  EXPECT_EQ(combine({a, b}), Verdict::Indeterminate);
  EXPECT_EQ(combine({b, c}), Verdict::Fail);
  c.undecided(Witness{});
  EXPECT_EQ(c.verdict, Verdict::Fail);
  EXPECT_EQ(to_string(Verdict::Indeterminate), "indeterminate");
}
