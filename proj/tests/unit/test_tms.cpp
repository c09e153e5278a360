#include "goldshift/errors.hpp"
#include "goldshift/tms.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace goldshift;

namespace {

const AdjacencyMatrix A = AdjacencyMatrix::golden();

bool admissible(const std::string& s) { return is_admissible(Word::parse(s), A); }

}  // namespace

TEST(Admissibility, GoldenExamples) {
  EXPECT_TRUE(admissible("132"));
  EXPECT_TRUE(admissible("2"));
  EXPECT_FALSE(admissible("131"));
  EXPECT_FALSE(admissible("12"));
  EXPECT_TRUE(admissible("1132321"));
}

TEST(Admissibility, RejectsOutOfRangeState) {
  EXPECT_THROW(is_admissible(Word::parse("14"), A), InputError);
  EXPECT_THROW(Word::parse(""), InputError);
  EXPECT_THROW(Word::parse("1a"), InputError);
}

TEST(Adjacency, ValidatesShape) {
  EXPECT_THROW(AdjacencyMatrix({{1, 0}, {1, 0}}), InputError);  // column 2 unreachable
  EXPECT_THROW(AdjacencyMatrix({{1, 1}, {0, 0}}), InputError);  // row 2 has no successor
  EXPECT_THROW(AdjacencyMatrix({{1, 2}, {1, 1}}), InputError);
  EXPECT_THROW(AdjacencyMatrix({{1, 1, 0}, {1, 1}}), InputError);
}

TEST(MixingIndex, Golden) {
  // A^2 row 3 is (1, 0, 1); A^3 is positive.
  EXPECT_EQ(mixing_index(A), 3);
}

TEST(MixingIndex, AllOnesAndCycle) {
  EXPECT_EQ(mixing_index(AdjacencyMatrix::full(4)), 1);
  EXPECT_FALSE(mixing_index(AdjacencyMatrix({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}})).has_value());
}

TEST(Enumeration, LengthThreeHasEightWords) {
  // Sum of the entries of A^2.
  const auto words = enumerate_admissible(A, 3);
  EXPECT_EQ(words.size(), 8u);
  EXPECT_EQ(count_admissible(A, 3), 8);
  std::set<std::string> seen;
  for (const auto& w : words) {
    EXPECT_TRUE(is_admissible(w, A));
    seen.insert(w.str());
  }
  EXPECT_EQ(seen.size(), 8u);
  EXPECT_EQ(words.front().str(), "111");
}

TEST(Enumeration, LengthOneAndConstrainedEnds) {
  EXPECT_EQ(enumerate_admissible(A, 1).size(), 3u);
  const auto w = enumerate_admissible(A, 2, State{2});
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0].str(), "32");
  EXPECT_EQ(enumerate_admissible(A, 4, State{0}, State{1}).size(),
            static_cast<std::size_t>(count_admissible(A, 4, State{0}, State{1})));
}

TEST(Enumeration, CountsAreFibonacciLike) {
  // Number of admissible words grows by phi^2 per two steps; check against a brute force.
  for (std::size_t len = 1; len <= 8; ++len) {
    std::size_t brute = 0;
    std::size_t total = 1;
    for (std::size_t i = 0; i < len; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      std::string s;
      std::size_t c = code;
      for (std::size_t i = 0; i < len; ++i, c /= 3) s.push_back(char('1' + c % 3));
      brute += admissible(s);
    }
    EXPECT_EQ(count_admissible(A, len), brute) << len;
  }
}

TEST(Enumeration, CapIsEnforced) {
  EXPECT_THROW(enumerate_admissible(A, 40, std::nullopt, std::nullopt, 1000), CapExceeded);
}

TEST(Bridge, AlreadyAdmissible) {
  const auto r = bridge_concat(Word::parse("1321"), Word::parse("32"), A);
  EXPECT_EQ(r.changed, 0);
  EXPECT_EQ(r.word.str(), "1321");
}

TEST(Bridge, RewritesToEndInThree) {
  const auto r = bridge_concat(Word::parse("1321"), Word::parse("23"), A);
  EXPECT_EQ(r.word.str().back(), '3');
  EXPECT_EQ(r.changed, 1);
  Word joined = r.word;
  joined.symbols.push_back(1);
  EXPECT_TRUE(is_admissible(joined, A));
}

TEST(Bridge, MinimalityAgainstExhaustiveSearch) {
  for (const auto& left : enumerate_admissible(A, 5))
    for (State first = 0; first < 3; ++first) {
      const Word right{{first}, 0};
      const auto r = bridge_concat(left, right, A);
      int best = 3;
      for (State a = 0; a < 3; ++a)
        for (State b = 0; b < 3; ++b) {
          Word c = left;
          c.symbols[3] = a;
          c.symbols[4] = b;
          c.symbols.push_back(first);
          if (is_admissible(c, A)) best = std::min(best, int(a != left.symbols[3]) + int(b != left.symbols[4]));
        }
      EXPECT_EQ(r.changed, best) << left.str() << " " << int(first);
    }
}

TEST(Bridge, NoRewriteExists) {
  // Under the identity pattern a run of ones can never turn into a two.
  const AdjacencyMatrix id({{1, 0}, {0, 1}});
  EXPECT_THROW(bridge_concat(Word::parse("111"), Word::parse("2"), id), InputError);
  EXPECT_EQ(bridge_concat(Word::parse("11"), Word::parse("2"), id).word.str(), "22");
}
