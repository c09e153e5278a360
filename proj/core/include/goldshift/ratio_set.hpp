#pragma once

#include "goldshift/construction.hpp"
#include "goldshift/tms.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace goldshift {

struct RatioSetConfig {
  int j = 1;              // target r = f(lambda_j); j = 0 gives r = 1
  int t = 0;              // truncation level, 0 selects the last level
  double eps = 0.05;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::uint64_t max_shifts = 64;   // shifts 4 l k_t for l = 1..max_shifts
  std::uint64_t chunk = 1024;      // samples per deterministic task
  double confidence = 0.95;
};

struct RatioSetReport {
  int j = 0, t = 0;
  double eps = 0;
  double log_target = 0;
  BigInt shift_unit;
  std::uint64_t shifts = 0;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  std::vector<std::uint64_t> first_hit;  // first_hit[l-1]: samples whose first hit is at shift l
  double mu_B = 0;
  double estimate = 0;  // mu(B) hits / samples
  double ci_low = 0, ci_high = 0;
  double confidence = 0.95;
  std::string verdict() const;  // "positive evidence" or "inconclusive"
};

// Monte Carlo estimate of mu(B ∩ union_l {T^{s_l} x in B, |(T^{s_l})'(x)/r - 1| <= eps}).
// Results depend only on (seed, chunk), not on the thread count.
RatioSetReport ratio_set_experiment(const Construction& c, const Word& B, const RatioSetConfig& cfg);

struct ClopperPearson {
  double low = 0, high = 1;
};
ClopperPearson clopper_pearson(std::uint64_t hits, std::uint64_t n, double confidence);

// Exact mass of the witness sub-event at the first shift 4 k_t: x in B with a
// good level-t block ending off a one, and T^{4 k_t} x following its witness.
struct WitnessMass {
  double mass = 0;
  BigInt shift;
  std::size_t prefixes = 0;
  std::size_t skipped = 0;  // block states without room for the witness
};

WitnessMass witness_submass(const Construction& c, const Word& B, int j, int t,
                            std::size_t prefix_cap = 24);

}  // namespace goldshift
