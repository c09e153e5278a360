#include "goldshift/construction.hpp"
#include "goldshift/criteria.hpp"
#include "goldshift/errors.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace goldshift;
namespace bmp = boost::multiprecision;

namespace {

// 2 sum_j (sqrt(Q_lambda(1, j)) - sqrt(Q(1, j)))^2, evaluated directly.
long double level_term_oracle(long double lambda) {
  const auto a = oracle::q_lambda(lambda)[0], b = oracle::q_lambda(1)[0];
  long double s = 0;
  for (int j = 0; j < 3; ++j) s += std::pow(std::sqrt(a[j]) - std::sqrt(b[j]), 2.0L);
  return 2 * s;
}

double to_d(const Real& r) { return r.convert_to<double>(); }

MeasureSpec one_level(double lambda) { return MeasureSpec(BlockSchedule({ScheduleLevel{lambda, 1, 3, BigInt(6)}})); }

}  // namespace

TEST(Hellinger, ConstantQSumsToZero) {
  const auto r = hellinger_criterion(MeasureSpec{});
  EXPECT_TRUE(r.terms.empty());
  EXPECT_EQ(to_d(r.tail_bound), 0.0);
  EXPECT_TRUE(r.summable());
  EXPECT_TRUE(r.tail_within_tolerance());
  EXPECT_EQ(r.verdict(), "summable");
  EXPECT_EQ(to_d(hellinger_level_term(Real(1))), 0.0);
}

TEST(Hellinger, LevelOneTermsFromTheFormula) {
  const auto r = hellinger_criterion(one_level(1.5));
  ASSERT_EQ(r.terms.size(), 1u);
  EXPECT_NEAR(to_d(r.terms[0]), double(level_term_oracle(1.5L)), 1e-15);
  // Entering and leaving the block each contribute when x carries a one there.
  EXPECT_NEAR(hellinger_path_sum(one_level(1.5), Word::parse("3111", 0)), double(level_term_oracle(1.5L)), 1e-15);
  EXPECT_NEAR(hellinger_path_sum(one_level(1.5), Word::parse("3113", 0)), double(level_term_oracle(1.5L)) / 2,
              1e-15);
  EXPECT_EQ(hellinger_path_sum(one_level(1.5), Word::parse("3232", 0)), 0.0);
}

TEST(Hellinger, StableForLambdaNearOne) {
  PrecisionGuard g(256);
  const Real lam = 1 + Real("1e-30");
  const Real term = hellinger_level_term(lam);
  // Leading order: term ~ C (lambda - 1)^2 with C = limit of envelope-free ratio.
  const Real ratio = term / ((lam - 1) * (lam - 1));
  const Real lam2 = 1 + Real("1e-31");
  const Real ratio2 = hellinger_level_term(lam2) / ((lam2 - 1) * (lam2 - 1));
  EXPECT_GT(ratio, 0);
  EXPECT_LT(bmp::abs(ratio / ratio2 - 1), Real("1e-25"));
}

TEST(Hellinger, EnvelopeDominatesAndRatioIsBounded) {
  double max_ratio = 0, min_ratio = 1e9;
  for (double lam = 1.001; lam < 4; lam *= 1.1) {
    const Real t = hellinger_level_term(Real(lam));
    EXPECT_LE(t, hellinger_envelope(Real(lam))) << lam;
    EXPECT_NEAR(to_d(t), double(level_term_oracle(lam)), 1e-13);
    if (lam > 1.2) continue;
    const double ratio = to_d(t) / ((lam - 1) * (lam - 1));
    max_ratio = std::max(max_ratio, ratio);
    min_ratio = std::min(min_ratio, ratio);
  }
  // Near 1 the terms behave like C (lambda - 1)^2 with C in a narrow band.
  EXPECT_LT(max_ratio / min_ratio, 1.5);
}

TEST(Hellinger, ConstantTwoIsDivergent) {
  TailRule tail;
  tail.kind = TailRule::Kind::ConstantLambda;
  tail.lambda = 2.0;
  const std::vector<Real> lambdas(5, Real(2));
  const auto r = hellinger_criterion(lambdas, tail);
  EXPECT_TRUE(r.divergent());
  EXPECT_EQ(r.verdict(), "divergent dominating series");
  // Partial sums grow linearly.
  ASSERT_EQ(r.partial_sums.size(), 5u);
  EXPECT_NEAR(to_d(r.partial_sums[4]), 5 * double(level_term_oracle(2)), 1e-13);
}

TEST(Hellinger, DeskConstructionTailBelowTolerance) {
  const auto c3 = build_measure_spec(3, Profile::desk());
  const auto r = hellinger_criterion(c3);
  EXPECT_EQ(r.verdict(), "summable");
  EXPECT_TRUE(r.tail_within_tolerance());
  EXPECT_LT(to_d(r.tail_bound), 1e-8);
  // Partial sums increase and the increments shrink.
  ASSERT_EQ(r.terms.size(), 3u);
  EXPECT_GT(r.terms[0], r.terms[1]);
  EXPECT_GT(r.terms[1], r.terms[2]);
  // Construction tail is no smaller than the next admissible level term.
  const double x = std::ldexp(1.0, -5) / (2 * std::exp(to_d(c3.levels[2].log_m)));
  EXPECT_GE(to_d(r.tail_bound), double(level_term_oracle(1 + x)) * 0.999);
}

TEST(Hellinger, HorizonCutsTheSeries) {
  const auto c2 = build_measure_spec(2, Profile::desk());
  const auto r = hellinger_criterion(c2, 1);
  EXPECT_EQ(r.terms.size(), 1u);
  EXPECT_GE(to_d(r.tail_bound), to_d(hellinger_level_term(c2.levels[1].lambda)));
}

TEST(Exactness, ConstantQIsMinOfCube) {
  const auto r = exactness_constant(MeasureSpec{}, 3);
  const auto q = oracle::q_lambda(1);
  const auto q3 = oracle::mul(oracle::mul(q, q), q);
  long double mn = 1;
  for (const auto& row : q3)
    for (long double v : row) mn = std::min(mn, v);
  EXPECT_NEAR(r.constant, double(mn), 1e-15);
  EXPECT_GT(r.constant, 0);
  EXPECT_EQ(exactness_constant(MeasureSpec{}, 1).constant, 0.0);
  EXPECT_EQ(exactness_constant(MeasureSpec{}, 2).constant, 0.0);
  EXPECT_THROW(exactness_constant(MeasureSpec{}, 0), InputError);
}

TEST(Exactness, LevelOneAgainstAllWindowPatterns) {
  // Every window of three consecutive indices around the block [1, 3).
  const std::vector<oracle::Block> blocks{{1, 3, 1.5L}};
  long double mn = 1;
  for (int j = -4; j < 10; ++j) {
    oracle::M3 p = oracle::q_lambda(oracle::lambda_at(blocks, j));
    p = oracle::mul(p, oracle::q_lambda(oracle::lambda_at(blocks, j + 1)));
    p = oracle::mul(p, oracle::q_lambda(oracle::lambda_at(blocks, j + 2)));
    for (const auto& row : p)
      for (long double v : row) mn = std::min(mn, v);
  }
  const auto r = exactness_constant(one_level(1.5), 3);
  EXPECT_NEAR(r.constant, double(mn), 1e-15);
  EXPECT_GT(r.constant, 0);
  EXPECT_LE(r.patterns, 8u);
}

TEST(Exactness, DecreasesAsLambdaGrows) {
  double prev = exactness_constant(one_level(1.0), 3).constant;
  for (double lam : {1.5, 2.0, 4.0, 10.0}) {
    const double c = exactness_constant(one_level(lam), 3).constant;
    EXPECT_LT(c, prev) << lam;
    EXPECT_GT(c, 0);
    prev = c;
  }
}

TEST(Exactness, ConstructedSpecsArePositive) {
  for (const auto& c : {build_measure_spec(1, Profile::full()), build_measure_spec(2, Profile::full()),
                        build_measure_spec(2, Profile::desk())})
    EXPECT_GT(exactness_constant(c.spec, 3).constant, 0);
}

TEST(Conservativity, StationaryFlag) {
  const auto r = conservativity_report({}, Profile::full());
  EXPECT_TRUE(r.stationary);
  EXPECT_TRUE(r.holds());
}

TEST(Conservativity, ConstructedLevelsAndHalfSums) {
  for (const auto& c : {build_measure_spec(2, Profile::full()), build_measure_spec(3, Profile::desk())}) {
    const auto r = conservativity_report(c.levels, c.profile);
    EXPECT_TRUE(r.holds());
    ASSERT_EQ(r.levels.size(), c.levels.size());
    EXPECT_EQ(r.levels[0].status, Status::Vacuous);
    for (std::size_t i = 1; i < r.levels.size(); ++i) {
      EXPECT_NE(r.levels[i].status, Status::Fail);
      EXPECT_TRUE(r.levels[i].partial_ok);
      // Partial sum over the inductive levels so far is at least half their count.
      EXPECT_GE(r.levels[i].log_partial_sum, bmp::log(Real(i) / 2));
    }
  }
}

TEST(Conservativity, TermMatchesDirectEvaluation) {
  const auto c = build_measure_spec(2, Profile::desk());
  const auto r = conservativity_report(c.levels, c.profile);
  const auto& L = c.levels[1];
  PrecisionGuard g(L.working_bits);
  const Real want = bmp::log(real_from(*L.m - L.N)) - 2 * real_from(L.N) * bmp::log(Real("1.5")) - bmp::log(Real(2));
  EXPECT_LT(bmp::abs(r.levels[1].log_term - want), Real("1e-30"));
}

TEST(Conservativity, TamperedMIsReportedFalse) {
  auto levels = build_measure_spec(2, Profile::desk()).levels;
  levels[1].m = levels[1].N + 5;
  levels[1].M = levels[1].N + *levels[1].m;
  const auto r = conservativity_report(levels, Profile::desk());
  EXPECT_FALSE(r.holds());
  EXPECT_EQ(r.levels[1].status, Status::Fail);
}
