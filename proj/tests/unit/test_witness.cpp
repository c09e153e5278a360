#include "goldshift/construction.hpp"
#include "goldshift/errors.hpp"
#include "goldshift/ratio_set.hpp"
#include "goldshift/rn.hpp"
#include "goldshift/witness.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace goldshift;

namespace {

const AdjacencyMatrix A = AdjacencyMatrix::golden();

LevelParams level(int l, double lambda, long long K, long long n, long long N, long long k_mix, long long m,
                  std::map<int, BigInt> p) {
  LevelParams L;
  L.l = l;
  L.lambda = Real(lambda);
  L.lambda_d = lambda;
  L.K = K;
  L.n = n;
  L.N = N;
  L.k_mix = k_mix;
  L.m = BigInt(m);
  L.M = BigInt(N + m);
  L.log_m = Real(std::log(double(m)));
  L.p = std::move(p);
  return L;
}

// Two levels with a short second block so the witness event is enumerable.
Construction small_construction(long long n2) {
  Construction c;
  c.profile = Profile::desk();
  c.log_r = Real(std::log(distortion_value(1.5)));
  c.levels = {level(1, 1.5, 1, 2, 3, 7, 3, {{1, 1}}), level(2, 1.5, 1, n2, 6 + n2, 30, 200, {{1, 1}, {2, 1}})};
  c.spec = spec_from_params(c.levels, c.profile);
  return c;
}

struct Counts {
  long long L = 0, V = 0, P23 = 0;
};

Counts count_inner(const std::vector<State>& s, std::size_t i0, std::size_t i1) {
  Counts c;
  for (std::size_t i = i0; i < i1; ++i) {
    c.L += s[i] == 0;
    if (i + 1 < i1) {
      c.V += s[i] == 0 && s[i + 1] == 0;
      c.P23 += s[i] == 1 && s[i + 1] == 2;
    }
  }
  return c;
}

const Construction& desk2() {
  static const Construction c = build_measure_spec(2, Profile::desk());
  return c;
}

}  // namespace

TEST(GoodCylinder, AllThreeTwoBlockIsNotGood) {
  const auto& c = desk2();
  const auto& L2 = c.levels[1];
  const auto M = static_cast<std::size_t>(L2.N - L2.n);
  std::string s;
  for (std::size_t i = 0; i < static_cast<std::size_t>(L2.N); ++i) s.push_back(i % 2 ? '2' : '3');
  const auto g = good_cylinder(Word::parse(s), 2, c.levels);
  EXPECT_EQ(g.L, 0);
  EXPECT_FALSE(g.good);
  EXPECT_GT(M, 0u);
}

TEST(GoodCylinder, HandExampleWithSixtySymbols) {
  auto c = small_construction(60);
  // Block [6, 66): a run of 19 ones, then 3 (2 3)^19 2 1, so 20 ones and 19 inner (2,3) pairs.
  std::string s = "323232" + std::string(19, '1') + "3";
  for (int i = 0; i < 19; ++i) s += "23";
  s += "21";
  ASSERT_EQ(s.size(), 66u);
  ASSERT_TRUE(is_admissible(Word::parse(s), A));
  const auto g = good_cylinder(Word::parse(s), 2, c.levels);
  EXPECT_EQ(g.n, 60);
  EXPECT_EQ(g.L, 20);
  EXPECT_EQ(g.pairs23, 19);
  EXPECT_TRUE(g.good);
  // 15 ones is not enough (needs more than n / 4).
  std::string few = "323232" + std::string(15, '1') + "3";
  for (int i = 0; i < 22; ++i) few += "23";
  ASSERT_EQ(few.size(), 66u);
  EXPECT_FALSE(good_cylinder(Word::parse(few), 2, c.levels).good);
}

TEST(GoodCylinder, MassAtDeskScale) {
  const auto& c = desk2();
  const auto& L2 = c.levels[1];
  int good = 0;
  const int trials = 2000;
  for (int i = 0; i < trials; ++i) good += good_cylinder(sample_window(c.spec, 0, L2.N - 1, 50'000 + i), 2, c.levels).good;
  // At least 1 - 1/t = 1/2, and never above the pair-typicality mass by more than noise.
  EXPECT_GT(double(good) / trials, 0.5);
  EXPECT_LT(double(good) / trials, L2.pair_mass + 0.03);
}

TEST(WitnessBlock, Shape) {
  // Before a 3 a 2 is inserted; V + p + 1 ones; then L - V - 1 "321" blocks; then 3/2 padding.
  auto b = witness_block(2, 5, 2, 1, 20);
  ASSERT_TRUE(b.has_value());
  EXPECT_EQ(Word({*b, 0}).str(), "21111321321323232323");
  const auto c = count_inner(*b, 0, b->size());
  EXPECT_EQ(c.L, 6);
  EXPECT_EQ(c.V, 3);
  EXPECT_FALSE(witness_block(0, 4, 4, 1, 20).has_value());   // no run of ones to grow
  EXPECT_FALSE(witness_block(0, 10, 2, 1, 12).has_value());  // no room
}

TEST(Witness, DeskLevelTwoThousandGoodCylinders) {
  const auto& c = desk2();
  const auto& L2 = c.levels[1];
  const BigInt p = L2.p.at(1);
  const auto M = static_cast<std::size_t>(L2.N - L2.n);
  const double log_r = c.log_r.convert_to<double>();
  int done = 0, marker_checks = 0;
  for (std::uint64_t seed = 1; done < 1000; ++seed) {
    const Word x = sample_window(c.spec, -1, L2.N - 1, seed);
    Word cw{std::vector<State>(x.symbols.begin() + 1, x.symbols.end()), 0};
    if (!good_cylinder(cw, 2, c.levels).good) continue;
    Word b{std::vector<State>(x.symbols.begin(), x.symbols.begin() + 3), -1};
    const auto w = witness_word(b, cw, 1, 2, c.levels);
    ++done;
    ASSERT_TRUE(is_admissible(w.d, A));
    ASSERT_EQ(w.d.start, -1);
    ASSERT_EQ(w.d.last(), L2.N - 1);
    // Agrees with c before the block and with b around 0.
    for (std::size_t i = 0; i < M; ++i) ASSERT_EQ(w.d.symbols[i + 1], cw.symbols[i]);
    for (std::size_t i = 0; i < 3; ++i) ASSERT_EQ(w.d.symbols[i], b.symbols[i]);
    const auto before = count_inner(cw.symbols, M, cw.size());
    const auto after = count_inner(w.d.symbols, M + 1, w.d.size());
    EXPECT_EQ(after.L - before.L, p);
    EXPECT_EQ(after.V - before.V, p);
    // p (log((1+phi)/(1+phi lambda_2)) + log lambda_2) is log f(lambda_1) on the lattice.
    EXPECT_NEAR(w.log_rn, log_r, 1e-12);
    for (State first = 0; first < 3; ++first) {
      const auto m = marker_variant(w, Word{{first}, 0}, c.levels);
      Word joined = m.d;
      joined.symbols.push_back(first);
      EXPECT_TRUE(is_admissible(joined, A));
      EXPECT_LE(std::abs(m.dL) + std::abs(m.dV), 4);
      EXPECT_LE(std::abs(m.log_factor_change), m.bound + 1e-15);
      EXPECT_NEAR(m.bound, 4 * std::log(L2.lambda_d), 1e-15);
      ++marker_checks;
    }
  }
  EXPECT_EQ(marker_checks, 3000);
}

TEST(Witness, RejectsBadInput) {
  const auto& c = desk2();
  const auto& L2 = c.levels[1];
  Word x;
  for (std::uint64_t seed = 1;; ++seed) {
    x = sample_window(c.spec, -1, L2.N - 1, seed);
    if (good_cylinder(Word{std::vector<State>(x.symbols.begin() + 1, x.symbols.end()), 0}, 2, c.levels).good) break;
  }
  const Word cw{std::vector<State>(x.symbols.begin() + 1, x.symbols.end()), 0};
  const Word b{std::vector<State>(x.symbols.begin(), x.symbols.begin() + 3), -1};
  EXPECT_THROW(witness_word(b, cw, 2, 2, c.levels), InputError);
  EXPECT_THROW(witness_word(Word{b.symbols, 0}, cw, 1, 2, c.levels), InputError);
  Word other = b;
  other.symbols[1] = other.symbols[1] == 1 ? 2 : 1;
  other.symbols[2] = other.symbols[1] == 1 ? 2 : 0;
  EXPECT_THROW(witness_word(other, cw, 1, 2, c.levels), InputError);
  std::string s;
  for (std::size_t i = 0; i < static_cast<std::size_t>(L2.N); ++i) s.push_back(i % 2 ? '2' : '3');
  EXPECT_THROW(witness_word(Word::parse("232", -1), Word::parse(s), 1, 2, c.levels), InputError);
}

TEST(WitnessMass, MatchesBruteForceEnumeration) {
  const long long n = 20;
  const auto c = small_construction(n);
  const Word B = Word::parse("132", -1);
  const auto wm = witness_submass(c, B, 1, 2);
  EXPECT_EQ(wm.shift, 120);

  // Enumerate x on [-1, 26) extending B; add mu([x]) times the chance that
  // T^120 x then follows the witness d(x).
  const std::vector<oracle::Block> blocks{{1, 3, 1.5L}, {6, 26, 1.5L}};
  const auto q = oracle::q_lambda(1);
  const long long N = 6 + n, gap = 120 - 1 - (N - 1);
  oracle::M3 G{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  for (long long i = 0; i < gap; ++i) G = oracle::mul(G, q);

  long double mass = 0;
  std::size_t words = 0;
  std::vector<State> x(B.symbols);
  auto rec = [&](auto&& self, long double m) -> void {
    if (static_cast<long long>(x.size()) == N + 1) {
      ++words;
      const auto cnt = count_inner(x, 7, x.size());
      if (!(4 * cnt.L > n && 2 * cnt.L < n && 15 * cnt.P23 >= n) || x.back() == 0) return;
      const auto blk = witness_block(x[6], cnt.L, cnt.V, 1, n);
      if (!blk) return;
      std::vector<State> d(x.begin(), x.begin() + 7);
      d.insert(d.end(), blk->begin(), blk->end());
      long double follow = G[x.back()][d[0]];
      for (std::size_t i = 0; i + 1 < d.size(); ++i) follow *= q[d[i]][d[i + 1]];
      mass += m * follow;
      return;
    }
    const long long j = static_cast<long long>(x.size()) - 2;  // coordinate of x.back()
    const auto P = oracle::q_lambda(oracle::lambda_at(blocks, j));
    for (State u = 0; u < 3; ++u)
      if (A.allowed(x.back(), u)) {
        x.push_back(u);
        self(self, m * P[x[x.size() - 2]][u]);
        x.pop_back();
      }
  };
  rec(rec, oracle::cylinder(blocks, "132", -1));
  EXPECT_GT(words, 10'000u);
  ASSERT_GT(mass, 0);
  EXPECT_NEAR(wm.mass / double(mass), 1.0, 1e-10);
}

TEST(WitnessMass, DeskLevelTwoIsPositive) {
  const auto wm = witness_submass(desk2(), Word::parse("132", -1), 1, 2);
  EXPECT_GT(wm.mass, 0);
  EXPECT_LT(wm.mass, cylinder_measure(desk2().spec, Word::parse("132", -1)));
  EXPECT_EQ(wm.shift, 4 * desk2().levels[1].k_mix);
}
