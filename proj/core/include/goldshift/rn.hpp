#pragma once

#include "goldshift/construction.hpp"
#include "goldshift/measure.hpp"
#include "goldshift/tms.hpp"

namespace goldshift {

// Counts of ones and of 11-pairs on the block [M_{j-1}, N_j).
struct BlockCounts {
  int level = 0;
  long long L = 0;
  long long V = 0;
};

// Literal convention: the pair at N_j - 1 uses x_{N_j}, so x must cover N_j.
// Inner convention: only pairs with both symbols inside the block.
enum class EdgePair { Literal, Inner };

BlockCounts block_counts(const Word& x, const BlockSchedule& sched, int level, EdgePair edge = EdgePair::Literal,
                         const BigInt& shift = 0);

// log (T^n)'(x) with a certified bound eta on |log error|.
struct RNResult {
  double log_value = 0;
  double eta = 0;  // multiplicative error interval [e^-eta, e^eta]
  int truncation_level = 0;
  double value() const;
  bool overlaps(const RNResult& o) const;
};

// Product over levels 1..t of the L/V count factors. Requires N_t <= n < m_t.
RNResult rn_analytic(const MeasureSpec& spec, const Word& x, const BigInt& n, int t);

// Truncated product over 0 <= k <= K of P_{k-n}(x_k, x_{k+1}) / P_k(x_k, x_{k+1}); n >= 0.
RNResult rn_direct(const MeasureSpec& spec, const Word& x, const BigInt& n, const BigInt& K);

// Largest index k with P_{k-n} != P_k (-1 when there is none).
BigInt last_contributing_index(const BlockSchedule& sched, const BigInt& n);

struct ChangeOfVariables {
  double lhs = 0;  // mu(T^n B), i.e. the cylinder moved n places left
  double rhs = 0;  // sum over refinements R of mu(R) (T^n)'(R)
  double tolerance = 0;
  std::size_t refinements = 0;
  bool holds() const;
};

// Brute-force change of variables on the window covering B and every
// contributing factor. Throws CapExceeded for windows above max_window.
ChangeOfVariables check_change_of_variables(const MeasureSpec& spec, const Word& B, const BigInt& n,
                                            std::size_t max_window = 16);

}  // namespace goldshift
