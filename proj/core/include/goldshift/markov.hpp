#pragma once

#include "goldshift/linalg.hpp"
#include "goldshift/numeric.hpp"
#include "goldshift/tms.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace goldshift {

class ProbVector {
 public:
  ProbVector() = default;
  // Entries must be non-negative and sum to 1 within 1e-12.
  explicit ProbVector(std::vector<double> p);
  explicit ProbVector(const RowVecD& p) : ProbVector(std::vector<double>(p.data(), p.data() + p.size())) {}

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  double log(std::size_t i) const;
  const std::vector<double>& values() const { return p_; }
  RowVecD row() const;
  double distance_inf(const ProbVector& o) const;

 private:
  std::vector<double> p_;
};

class StochasticMatrix {
 public:
  StochasticMatrix() = default;
  // Rows must be probability vectors within 1e-12.
  explicit StochasticMatrix(MatD m);
  // Additionally requires supp m == supp adj.
  StochasticMatrix(MatD m, const AdjacencyMatrix& adj);

  std::size_t size() const { return static_cast<std::size_t>(m_.rows()); }
  double operator()(std::size_t s, std::size_t t) const { return m_(s, t); }
  double log_entry(std::size_t s, std::size_t t) const;
  const MatD& matrix() const { return m_; }
  AdjacencyMatrix support() const;

  friend bool operator==(const StochasticMatrix& a, const StochasticMatrix& b) { return a.m_ == b.m_; }

 private:
  MatD m_;
};

// Q: rows (1/phi, 0, 1/phi^2), (1/phi, 0, 1/phi^2), (0, 1, 0).
StochasticMatrix golden_matrix();
// Closed form (1/sqrt5, 1/(phi sqrt5), 1/(phi sqrt5)).
ProbVector golden_stationary();
// Q with the first row replaced by (lambda phi, 0, 1) / (1 + lambda phi).
StochasticMatrix perturbed_matrix(double lambda);

MatR golden_matrix_real();
RowVecR golden_stationary_real();
MatR perturbed_matrix_real(const Real& lambda);

// Requires an irreducible aperiodic support.
ProbVector stationary_distribution(const StochasticMatrix& p);

// max_{s,t} |P^k(s,t)/pi(t) - 1|
double relative_deviation(const StochasticMatrix& p, std::uint64_t k);

// Smallest k with relative deviation <= eps, scanning up to scan_cap.
std::uint64_t relative_mixing_time(const StochasticMatrix& p, double eps,
                                   std::uint64_t scan_cap = 1'000'000);

struct MixingScan {
  BigInt k;
  Real log_deviation;  // log of the relative deviation at k
};

// Extended precision scan with tolerance given as log(eps). Uses the
// current mpfr precision; throws PrecisionError when eps is below it.
MixingScan relative_mixing_time_extended(const MatR& p, const Real& log_eps,
                                         std::uint64_t scan_cap = 1'000'000);

// Closed forms for Q: eigenvalues 1, 0, -1/phi^2.
// log of max_{s,t}|Q^k(s,t)/pi(t) - 1| for k >= 1.
Real golden_log_relative_deviation(const BigInt& k);
BigInt golden_relative_mixing_time(const Real& log_eps);

inline constexpr std::size_t kDpCap = 100'000;

// P(#{1 <= j <= n : X_j = state} / n in (lo, hi)) for X_0 ~ pi, X_{j+1} ~ P(X_j, .).
double dp_frequency_event(const ProbVector& pi, const StochasticMatrix& p, std::size_t n, double lo,
                          double hi, State state = 0, std::size_t cap = kDpCap);

// P(#{1 <= j <= n : X_j = a, X_{j+1} = b} / n > threshold), same chain.
double dp_pair_event(const ProbVector& pi, const StochasticMatrix& p, std::size_t n, double threshold,
                     State a = 1, State b = 2, std::size_t cap = kDpCap);

}  // namespace goldshift
