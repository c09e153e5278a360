#pragma once

#include "goldshift/measure.hpp"
#include "goldshift/numeric.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace goldshift {

enum class Mode { Full, Desk };

struct Profile {
  Mode mode = Mode::Full;
  std::string lambda1 = "1.5";
  unsigned precision_bits = kDefaultPrecisionBits;

  // Tolerance overrides; unset means the exact constants of the induction.
  std::optional<double> mixing_tol;    // replaces 3^{-3 N_l}
  std::optional<double> failure_base;  // replaces 9^{-3 N_l}
  std::optional<double> horizon_cap;   // caps m_{l-1} in the finite-approximation bound
  std::optional<double> confidence;    // replaces 1 - 1/l
  std::size_t dp_cap = kDpCap;

  // Base case.
  BigInt M0 = 1, n1 = 2, m1 = 3;

  static Profile full();
  // mixing 1e-2, failure base 1e-2, horizon cap 1e4.
  static Profile desk();
  std::string mode_name() const { return mode == Mode::Full ? "full" : "desk"; }
};

Mode parse_mode(const std::string& s);

struct LevelParams {
  int l = 0;
  Real lambda;
  double lambda_d = 1.0;
  BigInt K = 1;  // f(lambda_l) = r^{1/K}
  BigInt n, N, k_mix;
  std::optional<BigInt> m, M;  // absent when m is only known through log_m
  Real log_m;                  // log m (a lower bound when m is absent)
  std::map<int, BigInt> p;     // p(k, l) = K_l / K_k for k <= l
  bool dp_symbolic = false;    // typicality conditions not numerically checked
  double freq_mass = 1.0, pair_mass = 1.0;
  unsigned working_bits = kDefaultPrecisionBits;  // precision used for this level
};

struct Construction {
  Profile profile;
  Real log_r;  // log f(lambda_1)
  std::vector<LevelParams> levels;
  MeasureSpec spec;
};

// f(x) = x (1 + phi) / (1 + phi x) and its inverse y / (1 + phi - phi y).
Real distortion_value(const Real& x);
Real distortion_inverse(const Real& y);
double distortion_value(double x);
double distortion_inverse(double y);

struct LambdaChoice {
  Real lambda;
  BigInt K;
};

// The choosers extend a partial construction by one level.
LambdaChoice choose_lambda(int l, const Construction& so_far);
BigInt choose_n(int l, const Construction& so_far, const LambdaChoice& lc, bool* symbolic = nullptr,
                double* freq_mass = nullptr, double* pair_mass = nullptr);
BigInt choose_mixing_k(int l, const Construction& so_far, const LevelParams& partial);
// Returns nullopt when m exceeds the representable range; log_m receives log m.
std::optional<BigInt> choose_m(int l, const Construction& so_far, const LevelParams& partial, Real* log_m);

Construction build_measure_spec(int levels, const Profile& profile);

// Log of the mixing tolerance and of the failure base at level l.
Real log_mixing_tol(const Profile& profile, const BigInt& N);
Real log_failure_base(const Profile& profile, const BigInt& N);

// Marginal pi_j at extended precision, propagated through the given levels.
RowVecR marginal_real(const std::vector<LevelParams>& levels, const BigInt& j);

enum class Status { Pass, Fail, Vacuous, Symbolic };
std::string status_name(Status s);

struct ConditionEntry {
  int level = 0;
  std::string name;
  Status status = Status::Pass;
  bool strict = true;  // strict inequality (slack must be > 0)
  std::string slack;   // decimal margin, log domain where noted in detail
  std::string detail;
};

struct ConditionReport {
  std::vector<ConditionEntry> entries;
  bool all_pass() const;  // no Fail entries
  const ConditionEntry* find(int level, const std::string& name) const;
};

ConditionReport validate_params(const std::vector<LevelParams>& levels, const Profile& profile,
                                const Real& log_r);

// Schedule for a parameter list (levels drive Q_lambda on [M_{l-1}, N_l)).
MeasureSpec spec_from_params(const std::vector<LevelParams>& levels, const Profile& profile);

}  // namespace goldshift
