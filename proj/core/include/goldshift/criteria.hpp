#pragma once

#include "goldshift/construction.hpp"
#include "goldshift/measure.hpp"

#include <string>
#include <vector>

namespace goldshift {

// 2 h(lambda): squared Hellinger distance between the first rows of Q_lambda
// and Q, counted once for entering and once for leaving a perturbed block.
Real hellinger_level_term(const Real& lambda);
// 2 c(lambda) (lambda - 1)^2, an upper envelope for the level term.
Real hellinger_envelope(const Real& lambda);

struct HellingerReport {
  int horizon = 0;
  std::vector<Real> terms;         // one per level up to the horizon
  std::vector<Real> partial_sums;  // dominating series
  Real tail_bound;                 // +inf when the dominating series diverges
  std::string tail_rule;
  double tolerance = 1e-8;
  bool divergent() const;
  bool summable() const;          // finite tail bound
  bool tail_within_tolerance() const;
  std::string verdict() const;
};

// horizon < 0 means all stored levels.
HellingerReport hellinger_criterion(const std::vector<Real>& lambdas, const TailRule& tail, int horizon = -1,
                                    double tolerance = 1e-8);
HellingerReport hellinger_criterion(const MeasureSpec& spec, int horizon = -1, double tolerance = 1e-8);
HellingerReport hellinger_criterion(const Construction& c, int horizon = -1, double tolerance = 1e-8);

// Sum over the change points covered by x of the Hellinger distance at x_n.
double hellinger_path_sum(const MeasureSpec& spec, const Word& x);

struct ExactnessResult {
  int window = 3;
  double constant = 0;           // min entry over all products P_j ... P_{j+w-1}
  std::vector<int> worst;        // level pattern attaining it
  std::size_t patterns = 0;
};

ExactnessResult exactness_constant(const MeasureSpec& spec, int window = 3);

struct ConservativityLevel {
  int level = 0;
  Status status = Status::Pass;
  Real log_term;         // log of (m_t - N_t) lambda_1^{-2 N_t} / 2
  Real log_partial_sum;  // log of the partial sum through this level
  bool partial_ok = true;  // partial sum >= (inductive levels so far) / 2
};

struct ConservativityReport {
  bool stationary = false;  // constant Q: measure preserving, trivially conservative
  std::vector<ConservativityLevel> levels;
  bool holds() const;
};

ConservativityReport conservativity_report(const std::vector<LevelParams>& levels, const Profile& profile);

}  // namespace goldshift
