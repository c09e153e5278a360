#include "goldshift/construction.hpp"
#include "goldshift/errors.hpp"
#include "goldshift/ratio_set.hpp"

#include <gtest/gtest.h>

#include <boost/math/distributions/binomial.hpp>

using namespace goldshift;

namespace {

const Construction& desk2() {
  static const Construction c = build_measure_spec(2, Profile::desk());
  return c;
}

bool same(const RatioSetReport& a, const RatioSetReport& b) {
  return a.hits == b.hits && a.first_hit == b.first_hit && a.estimate == b.estimate && a.ci_low == b.ci_low &&
         a.ci_high == b.ci_high && a.shifts == b.shifts && a.shift_unit == b.shift_unit;
}

}  // namespace

TEST(ClopperPearson, KnownIntervals) {
  // Reference values of the exact binomial interval.
  auto ci = clopper_pearson(5, 10, 0.95);
  EXPECT_NEAR(ci.low, 0.187086, 1e-6);
  EXPECT_NEAR(ci.high, 0.812914, 1e-6);
  ci = clopper_pearson(0, 50, 0.95);
  EXPECT_EQ(ci.low, 0.0);
  EXPECT_NEAR(ci.high, 1 - std::pow(0.025, 1.0 / 50), 1e-12);
  ci = clopper_pearson(50, 50, 0.95);
  EXPECT_EQ(ci.high, 1.0);
  EXPECT_NEAR(ci.low, std::pow(0.025, 1.0 / 50), 1e-12);
}

TEST(ClopperPearson, MatchesBinomialTails) {
  // The lower bound p solves P(X >= k; p) = alpha / 2.
  for (std::uint64_t k : {1u, 7u, 40u, 99u}) {
    const auto ci = clopper_pearson(k, 100, 0.9);
    const boost::math::binomial_distribution<double> lo(100, ci.low), hi(100, ci.high);
    EXPECT_NEAR(boost::math::cdf(boost::math::complement(lo, double(k - 1))), 0.05, 1e-9);
    EXPECT_NEAR(boost::math::cdf(hi, double(k)), 0.05, 1e-9);
  }
  EXPECT_THROW(clopper_pearson(5, 4, 0.95), InputError);
  EXPECT_THROW(clopper_pearson(1, 4, 1.0), InputError);
}

TEST(RatioSet, StationaryTargetOne) {
  const auto c = build_measure_spec(0, Profile::desk());
  RatioSetConfig cfg;
  cfg.j = 0;
  cfg.samples = 20'000;
  const Word B = Word::parse("132", -1);
  const auto r = ratio_set_experiment(c, B, cfg);
  EXPECT_EQ(r.log_target, 0.0);
  EXPECT_NEAR(r.mu_B, cylinder_measure(c.spec, B), 1e-15);
  // Every return to B has derivative 1; returns within 64 steps are almost sure.
  EXPECT_NEAR(r.estimate, r.mu_B, 0.01 * r.mu_B);
  EXPECT_LE(r.ci_low, r.mu_B);
  EXPECT_EQ(r.verdict(), "positive evidence");
  std::uint64_t sum = 0;
  for (auto h : r.first_hit) sum += h;
  EXPECT_EQ(sum, r.hits);
}

TEST(RatioSet, ReproducibleAcrossRunsAndThreads) {
  RatioSetConfig cfg;
  cfg.samples = 6000;
  cfg.seed = 77;
  cfg.chunk = 512;
  const Word B = Word::parse("132", -1);
  const auto a = ratio_set_experiment(desk2(), B, cfg);
  const auto b = ratio_set_experiment(desk2(), B, cfg);
  cfg.threads = 4;
  const auto d = ratio_set_experiment(desk2(), B, cfg);
  EXPECT_TRUE(same(a, b));
  EXPECT_TRUE(same(a, d));
  cfg.seed = 78;
  EXPECT_FALSE(same(a, ratio_set_experiment(desk2(), B, cfg)));
}

TEST(RatioSet, DeskLevelTwoPositiveEvidence) {
  RatioSetConfig cfg;
  cfg.samples = 20'000;
  const Word B = Word::parse("132", -1);
  const auto r = ratio_set_experiment(desk2(), B, cfg);
  EXPECT_EQ(r.t, 2);
  EXPECT_EQ(r.shift_unit, 4 * desk2().levels[1].k_mix);
  EXPECT_NEAR(r.log_target, desk2().log_r.convert_to<double>(), 1e-15);
  EXPECT_GT(r.hits, 0u);
  EXPECT_EQ(r.verdict(), "positive evidence");
  const auto wm = witness_submass(desk2(), B, 1, 2);
  EXPECT_GT(r.ci_low, 0.9 * wm.mass);
  EXPECT_GE(r.ci_low, 0.5 * r.mu_B * 0.1);
}

TEST(RatioSet, EstimateCoversWitnessMassOnSmallSchedule) {
  // A short level-2 block where the witness event has a visible mass.
  Construction c;
  c.profile = Profile::desk();
  c.log_r = Real(std::log(distortion_value(1.5)));
  LevelParams l1, l2;
  l1.l = 1;
  l1.lambda = Real(1.5);
  l1.lambda_d = 1.5;
  l1.n = 2;
  l1.N = 3;
  l1.k_mix = 7;
  l1.m = BigInt(3);
  l1.M = BigInt(6);
  l1.p = {{1, 1}};
  l2 = l1;
  l2.l = 2;
  l2.n = 20;
  l2.N = 26;
  l2.k_mix = 30;
  l2.m = BigInt(500);
  l2.M = BigInt(526);
  l2.p = {{1, 1}, {2, 1}};
  c.levels = {l1, l2};
  c.spec = spec_from_params(c.levels, c.profile);
  const Word B = Word::parse("132", -1);
  RatioSetConfig cfg;
  cfg.samples = 50'000;
  cfg.t = 2;
  const auto r = ratio_set_experiment(c, B, cfg);
  EXPECT_EQ(r.shift_unit, 120);
  EXPECT_EQ(r.shifts, 4u);
  // The witness event is one way to hit at the first shift.
  const auto wm = witness_submass(c, B, 1, 2);
  ASSERT_GT(wm.mass, 0);
  EXPECT_GE(r.ci_high, wm.mass);
}

TEST(RatioSet, InputChecks) {
  RatioSetConfig cfg;
  cfg.samples = 10;
  cfg.t = 5;
  EXPECT_THROW(ratio_set_experiment(desk2(), Word::parse("132", -1), cfg), InputError);
  cfg.t = 0;
  EXPECT_THROW(ratio_set_experiment(desk2(), Word::parse("132", 5), cfg), InputError);
  EXPECT_THROW(ratio_set_experiment(desk2(), Word::parse("131", -1), cfg), InputError);
  EXPECT_THROW(witness_submass(desk2(), Word::parse("13", -1), 1, 2), InputError);
  EXPECT_THROW(witness_submass(desk2(), Word::parse("132", -1), 2, 2), InputError);
}
