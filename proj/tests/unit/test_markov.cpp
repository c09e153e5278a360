#include "goldshift/errors.hpp"
#include "goldshift/markov.hpp"
#include "goldshift/measure.hpp"
#include "goldshift/qsqrt5.hpp"
#include "goldshift/tms.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace goldshift;

namespace {

const AdjacencyMatrix A = AdjacencyMatrix::golden();

// Independent power iteration in long double.
oracle::V3 power_iterate(const oracle::M3& m) {
  oracle::V3 v{1.0L / 3, 1.0L / 3, 1.0L / 3};
  for (int i = 0; i < 2000; ++i) v = oracle::step(v, m);
  return v;
}

MeasureSpec level_one_spec() {
  return MeasureSpec(BlockSchedule({ScheduleLevel{1.5, 1, 3, BigInt(6)}}));
}

}  // namespace

TEST(Stationary, GoldenClosedForm) {
  const auto pi = stationary_distribution(golden_matrix());
  const auto want = oracle::pi_q();
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(pi[i], double(want[i]), 1e-12);
  EXPECT_NEAR(pi[0], 0.4472136, 1e-7);
  EXPECT_NEAR(pi[1], 0.2763932, 1e-7);
  EXPECT_LT(golden_stationary().distance_inf(pi), 1e-12);
}

TEST(Stationary, UniformMatrix) {
  MatD u = MatD::Constant(3, 3, 1.0 / 3);
  const auto pi = stationary_distribution(StochasticMatrix(u));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(pi[i], 1.0 / 3, 1e-14);
}

TEST(Stationary, PerturbedMatchesPowerIteration) {
  const auto pi = stationary_distribution(perturbed_matrix(2.0));
  const auto want = power_iterate(oracle::q_lambda(2.0L));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(pi[i], double(want[i]), 1e-13);
}

TEST(Stationary, RejectsPeriodicSupport) {
  MatD c(3, 3);
  c << 0, 1, 0, 0, 0, 1, 1, 0, 0;
  EXPECT_THROW(stationary_distribution(StochasticMatrix(c)), InputError);
}

TEST(Perturbed, LambdaOneIsQ) {
  const auto q = perturbed_matrix(1.0);
  const auto want = oracle::q_lambda(1.0L);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(q(i, j), double(want[i][j]), 1e-16);
  EXPECT_EQ(q, golden_matrix());
  EXPECT_EQ(q.support(), A);
}

TEST(Perturbed, LambdaTwoFirstRow) {
  const auto q = perturbed_matrix(2.0);
  const double d = 1 + 2 * kPhi;
  EXPECT_NEAR(q(0, 0), 2 * kPhi / d, 1e-16);
  EXPECT_EQ(q(0, 1), 0.0);
  EXPECT_NEAR(q(0, 2), 1 / d, 1e-16);
  EXPECT_NEAR(q(0, 0) + q(0, 1) + q(0, 2), 1.0, 1e-15);
  const auto g = golden_matrix();
  for (int i = 1; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(q(i, j), g(i, j));
}

TEST(Perturbed, RejectsLambdaBelowOne) {
  EXPECT_THROW(perturbed_matrix(0.5), InputError);
  MatD bad = golden_matrix().matrix();
  bad(0, 0) += 0.1;
  EXPECT_THROW(StochasticMatrix{bad}, InputError);
}

TEST(Marginal, NonPositiveIndicesAreStationary) {
  const auto spec = level_one_spec();
  for (int n : {-5, 0, 1}) EXPECT_LT(spec.marginal(n).distance_inf(golden_stationary()), 1e-15);
  const MeasureSpec flat;
  EXPECT_LT(flat.marginal(BigInt(1) << 80).distance_inf(golden_stationary()), 1e-12);
}

TEST(Marginal, OneStepThroughQLambda) {
  // P_1 = Q_1 drives x_1 -> x_2, so the first perturbed marginal sits at index 2.
  const auto spec = level_one_spec();
  const auto want = oracle::step(oracle::pi_q(), oracle::q_lambda(1.5L));
  const auto got = spec.marginal(2);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(got[i], double(want[i]), 1e-14);
  // Consistency pi_{j+1} = pi_j P_j along the whole schedule.
  for (int j = -2; j < 12; ++j) {
    const RowVecD next = spec.marginal(j).row() * spec.schedule().matrix_at(j).matrix();
    EXPECT_LT((next - spec.marginal(j + 1).row()).cwiseAbs().maxCoeff(), 1e-14) << j;
  }
}

TEST(Cylinder, StationaryValues) {
  const MeasureSpec flat;
  EXPECT_NEAR(cylinder_measure(flat, Word::parse("32")), double(1 / (oracle::kPhi * oracle::kSqrt5)), 1e-15);
  EXPECT_NEAR(cylinder_measure(flat, Word::parse("32")), 0.2763932, 1e-7);
  EXPECT_EQ(cylinder_measure(flat, Word::parse("12")), 0.0);
  EXPECT_TRUE(std::isinf(cylinder_log_measure(flat, Word::parse("312"))));
}

TEST(Cylinder, MatchesIndependentOracleOnLevelOne) {
  const auto spec = level_one_spec();
  const std::vector<oracle::Block> blocks{{1, 3, 1.5L}};
  for (int start = -2; start <= 5; ++start)
    for (const auto& w : enumerate_admissible(A, 4)) {
      Word placed = w;
      placed.start = start;
      EXPECT_NEAR(cylinder_measure(spec, placed), double(oracle::cylinder(blocks, w.str(), start)), 1e-15);
    }
}

TEST(Cylinder, Additivity) {
  const auto spec = level_one_spec();
  for (std::size_t len = 1; len <= 5; ++len)
    for (int start = -1; start <= 4; ++start)
      for (const auto& b : enumerate_admissible(A, len)) {
        Word w = b;
        w.start = start;
        const double whole = cylinder_measure(spec, w);
        double fwd = 0, back = 0;
        for (State s = 0; s < 3; ++s) {
          Word r = w;
          r.symbols.push_back(s);
          fwd += cylinder_measure(spec, r);
          Word l = w;
          l.symbols.insert(l.symbols.begin(), s);
          l.start = start - 1;
          back += cylinder_measure(spec, l);
        }
        EXPECT_NEAR(fwd, whole, 1e-12 * whole);
        EXPECT_NEAR(back, whole, 1e-12 * whole);
      }
}

TEST(Cylinder, TransitionProductMatchesOracle) {
  const BlockSchedule sched({ScheduleLevel{1.5, 1, 3, BigInt(6)}});
  const MatD p = transition_product(sched, 0, 7);
  oracle::M3 want{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  for (int j = 0; j < 7; ++j) want = oracle::mul(want, oracle::q_lambda(j >= 1 && j < 3 ? 1.5L : 1.0L));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(p(i, j), double(want[i][j]), 1e-15);
}

TEST(Sampling, SymbolOneFrequencyWithinThreeSigma) {
  const MeasureSpec flat;
  const std::size_t n = 100'000;
  const Word w = sample_window(flat, 0, BigInt(n - 1), 12345);
  ASSERT_EQ(w.size(), n);
  EXPECT_TRUE(is_admissible(w, A));
  std::size_t ones = 0;
  for (State s : w.symbols) ones += s == 0;
  // Variance of a Markov occupation count: sigma^2 = n p(1-p) (1 + 2 sum_k rho_k).
  // For Q the correlations decay like (-1/phi^2)^k, so the factor is below 3.
  const double p = 1 / kSqrt5;
  const double sigma = std::sqrt(3.0 * n * p * (1 - p));
  EXPECT_NEAR(double(ones), n * p, 3 * sigma);
}

TEST(Sampling, DeterministicPerSeed) {
  const auto spec = level_one_spec();
  const Word a = sample_window(spec, -10, 40, 99);
  const Word b = sample_window(spec, -10, 40, 99);
  const Word c = sample_window(spec, -10, 40, 100);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  EXPECT_TRUE(is_admissible(a, A));
  EXPECT_EQ(a.start, -10);
  EXPECT_THROW(sample_window(spec, 0, 100, 1, 50), CapExceeded);
}

TEST(Mixing, MatchesDirectPowerScan) {
  const auto q = golden_matrix();
  const auto pi = oracle::pi_q();
  // eps = 1 is a tie (the deviation at k = 2 is exactly 1), so it is only bounded below.
  EXPECT_LE(relative_mixing_time(q, 1.0), 3u);
  for (double eps : {0.5, 1e-2, 1e-4, 1e-8}) {
    oracle::M3 pk = oracle::q_lambda(1.0L);
    int k = 1;
    for (;; ++k, pk = oracle::mul(pk, oracle::q_lambda(1.0L))) {
      long double dev = 0;
      for (int s = 0; s < 3; ++s)
        for (int t = 0; t < 3; ++t) dev = std::max(dev, std::fabs(pk[s][t] / pi[t] - 1));
      if (dev <= eps) break;
    }
    EXPECT_EQ(relative_mixing_time(q, eps), std::uint64_t(k)) << eps;
    EXPECT_EQ(golden_relative_mixing_time(Real(std::log(eps))), k) << eps;
  }
  EXPECT_EQ(relative_mixing_time(q, 10.0), 1u);
  EXPECT_THROW(relative_mixing_time(q, 0.0), InputError);
}

TEST(Mixing, ExtendedPrecisionAgreesWithClosedForm) {
  PrecisionGuard g(256);
  const Real log_eps = -Real(60);
  const auto scan = relative_mixing_time_extended(golden_matrix_real(), log_eps);
  EXPECT_EQ(scan.k, golden_relative_mixing_time(log_eps));
  EXPECT_LE(scan.log_deviation, log_eps);
}

TEST(Dp, FrequencySingleStep) {
  const auto pi = golden_stationary();
  const auto p = perturbed_matrix(1.5);
  const double want = (pi.row() * p.matrix())(0);
  EXPECT_NEAR(dp_frequency_event(pi, p, 1, 0.5, 1.5), want, 1e-15);
  EXPECT_NEAR(dp_frequency_event(pi, p, 7, -1, 2), 1.0, 1e-14);
}

TEST(Dp, FrequencyMatchesEnumeration) {
  const MeasureSpec flat;
  const auto pi = golden_stationary();
  const auto q = golden_matrix();
  for (auto [lo, hi] : {std::pair{0.2, 0.5}, std::pair{0.3, 0.8}, std::pair{-0.1, 0.4}}) {
    double brute = 0;
    for (const auto& w : enumerate_admissible(A, 3)) {
      int ones = 0;
      for (State s : w.symbols) ones += s == 0;
      const double f = ones / 3.0;
      if (f > lo && f < hi) brute += cylinder_measure(flat, w);
    }
    EXPECT_NEAR(dp_frequency_event(pi, q, 3, lo, hi), brute, 1e-14);
  }
}

TEST(Dp, PairEventMatchesEnumeration) {
  const auto pi = golden_stationary();
  const auto p = perturbed_matrix(1.3);
  const RowVecD first = pi.row() * p.matrix();
  EXPECT_NEAR(dp_pair_event(pi, p, 5, -0.5), 1.0, 1e-14);
  for (double thr : {0.0, 0.25, 0.5}) {
    double brute = 0;
    for (const auto& w : enumerate_admissible(A, 3)) {
      int pairs = 0;
      for (int i = 0; i < 2; ++i) pairs += w.symbols[i] == 1 && w.symbols[i + 1] == 2;
      if (pairs / 2.0 > thr)
        brute += first(w.symbols[0]) * p(w.symbols[0], w.symbols[1]) * p(w.symbols[1], w.symbols[2]);
    }
    EXPECT_NEAR(dp_pair_event(pi, p, 2, thr), brute, 1e-15) << thr;
  }
}

TEST(Dp, CapIsEnforced) {
  EXPECT_THROW(dp_frequency_event(golden_stationary(), golden_matrix(), 1000, 0, 1, 0, 100), CapExceeded);
}

TEST(PairMass, ExceedsOneFifteenthExactly) {
  // pi_Q(2) Q_{2,3} = 1 / (phi sqrt5 (1 + phi)) evaluated in Q(sqrt5).
  const QSqrt5 phi = QSqrt5::phi();
  const QSqrt5 mass = QSqrt5(1) / (phi * QSqrt5::sqrt5() * (QSqrt5(1) + phi));
  EXPECT_GT(mass, QSqrt5(Rational(1, 15)));
  // Same number equals 1/(phi^3 sqrt5) = (5 - 2 sqrt5) / 5.
  EXPECT_EQ(mass, QSqrt5(1, Rational(-2, 5)));
  const double numeric = golden_stationary()[1] * golden_matrix()(1, 2);
  EXPECT_NEAR(numeric, mass.to_double(), 1e-15);
}
