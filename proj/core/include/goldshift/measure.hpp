#pragma once

#include "goldshift/markov.hpp"
#include "goldshift/numeric.hpp"
#include "goldshift/rng.hpp"
#include "goldshift/tms.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace goldshift {

// One level of the schedule: Q_lambda on [M_prev, N), Q on [N, M).
struct ScheduleLevel {
  double lambda = 1.0;
  BigInt M_prev, N;
  std::optional<BigInt> M;  // absent when too large to represent; Q continues forever
};

struct Segment {
  BigInt begin, end;  // [begin, end)
  int level = 0;      // 0 means the unperturbed Q
};

// Index interval where P_{k-n} and P_k are both constant.
struct ShiftSegment {
  BigInt begin, end;
  int level_shifted = 0;  // level driving P_{k-n}
  int level_here = 0;     // level driving P_k
};

class BlockSchedule {
 public:
  BlockSchedule();  // constant Q
  explicit BlockSchedule(std::vector<ScheduleLevel> levels);

  const std::vector<ScheduleLevel>& levels() const { return levels_; }
  std::size_t level_count() const { return levels_.size(); }
  // Level whose perturbed block contains j, else 0.
  int level_at(const BigInt& j) const;
  const StochasticMatrix& matrix(int level) const { return matrices_.at(static_cast<std::size_t>(level)); }
  const StochasticMatrix& matrix_at(const BigInt& j) const { return matrix(level_at(j)); }
  double lambda(int level) const { return level == 0 ? 1.0 : levels_.at(level - 1).lambda; }

  // Maximal constant segments covering [a, b).
  std::vector<Segment> segments(const BigInt& a, const BigInt& b) const;
  // Intervals of [a, b) where P_{k-n} differs from P_k.
  std::vector<ShiftSegment> contributing(const BigInt& n, const BigInt& a, const BigInt& b) const;
  // One past the last index where any perturbed block ends (1 for constant Q).
  BigInt perturbed_end() const;

 private:
  std::vector<ScheduleLevel> levels_;
  std::vector<StochasticMatrix> matrices_;
};

// How the dominating Hellinger series continues past the stored levels.
struct TailRule {
  enum class Kind { Stationary, Construction, ConstantLambda };
  Kind kind = Kind::Stationary;
  // Construction: future levels u obey 2 m ln(lambda_u) < 2^-u with log m >= log_m_bound.
  double log_m_bound = 0;
  // ConstantLambda: every future level repeats this lambda.
  double lambda = 1.0;
  std::string label() const;
};

class MeasureSpec {
 public:
  MeasureSpec() : MeasureSpec(BlockSchedule{}) {}
  explicit MeasureSpec(BlockSchedule schedule, TailRule tail = {});

  const BlockSchedule& schedule() const { return schedule_; }
  const TailRule& tail_rule() const { return tail_; }
  const ProbVector& base_marginal() const { return base_; }

  // pi_n with pi_{j+1} = pi_j P_j and pi_j = pi_Q for j <= 1.
  ProbVector marginal(const BigInt& n) const;

 private:
  BlockSchedule schedule_;
  TailRule tail_;
  ProbVector base_;
  struct Cache {
    std::mutex mu;
    std::map<BigInt, RowVecD> at;
  };
  std::shared_ptr<Cache> cache_;
};

// log mu([w]) with w placed at w.start; -inf when w is not admissible.
double cylinder_log_measure(const MeasureSpec& spec, const Word& w);
double cylinder_measure(const MeasureSpec& spec, const Word& w);

// Product P_a P_{a+1} ... P_{b-1} (identity when a >= b).
MatD transition_product(const BlockSchedule& schedule, const BigInt& a, const BigInt& b);

inline constexpr std::size_t kWindowCap = 10'000'000;

// Draws x_k..x_l from mu: x_k ~ pi_k, then x_{j+1} ~ P_j(x_j, .).
Word sample_window(const MeasureSpec& spec, const BigInt& k, const BigInt& l, std::uint64_t seed,
                   std::size_t cap = kWindowCap);

// Continues w to cover up to coordinate l by sampling the chain forward.
void extend_window(const MeasureSpec& spec, Word& w, const BigInt& l, Rng& rng,
                   std::size_t cap = kWindowCap);

}  // namespace goldshift
