#pragma once

#include "goldshift/construction.hpp"
#include "goldshift/rn.hpp"
#include "goldshift/tms.hpp"

#include <optional>
#include <vector>

namespace goldshift {

// Counts on the level-t block of a word starting at 0, inner pairs only.
struct GoodCylinderCheck {
  bool good = false;
  long long n = 0;       // block length n_t
  long long L = 0;       // ones in the block
  long long V = 0;       // 11 pairs inside the block
  long long pairs23 = 0; // 23 pairs inside the block
};

// Good: n/4 < L < n/2 and at least n/15 inner (2,3) pairs.
GoodCylinderCheck good_cylinder(const Word& c, int t, const std::vector<LevelParams>& levels);

// Replacement for the level block given the symbol before it and the counts
// (L, V) to be raised by p each. Nullopt when the block has no room.
std::optional<std::vector<State>> witness_block(State before, long long L, long long V, long long p,
                                                long long n);

struct Witness {
  Word d;  // covers [-len(b)/2, N_t)
  int j = 0, t = 0;
  BigInt p;
  GoodCylinderCheck c_counts;
  BlockCounts d_counts;  // inner counts of d on the level-t block
  bool inserted = false; // a '2' was placed after a leading '3'
  double log_rn = 0;     // p log f(lambda_t), equal to log f(lambda_j)
};

// b is a symmetric cylinder [b]_{-k}^{k}; c covers [0, N_t), is good, agrees
// with b on [0, k], and M_{t-1} > k. Requires 1 <= j < t.
Witness witness_word(const Word& b, const Word& c, int j, int t, const std::vector<LevelParams>& levels);

struct MarkerResult {
  Word d;
  int changed = 0;
  long long dL = 0, dV = 0;
  double log_factor_change = 0;  // shift of log (T^n)' caused by the rewrite
  double bound = 0;              // 4 ln lambda_t
};

// Rewrites the last symbols of a witness so that `right` can follow it.
MarkerResult marker_variant(const Witness& w, const Word& right, const std::vector<LevelParams>& levels);

}  // namespace goldshift
