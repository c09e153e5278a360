#include "goldshift/markov.hpp"

#include "goldshift/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace goldshift {

namespace {

constexpr double kRowTol = 1e-12;

void check_probability_row(const double* p, std::size_t n, const char* what) {
  double sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(p[i] >= 0) || !std::isfinite(p[i])) throw InputError(std::string(what) + ": entries must be finite and >= 0");
    sum += p[i];
  }
  if (std::abs(sum - 1.0) > kRowTol)
    throw InputError(std::string(what) + ": entries sum to " + to_decimal(sum) + ", not 1");
}

}  // namespace

ProbVector::ProbVector(std::vector<double> p) : p_(std::move(p)) {
  if (p_.empty()) throw InputError("probability vector must be non-empty");
  check_probability_row(p_.data(), p_.size(), "probability vector");
}

double ProbVector::log(std::size_t i) const {
  return p_[i] > 0 ? std::log(p_[i]) : -std::numeric_limits<double>::infinity();
}

RowVecD ProbVector::row() const {
  RowVecD r(p_.size());
  for (std::size_t i = 0; i < p_.size(); ++i) r(i) = p_[i];
  return r;
}

double ProbVector::distance_inf(const ProbVector& o) const {
  if (o.size() != size()) throw InputError("probability vectors of different size");
  double d = 0;
  for (std::size_t i = 0; i < size(); ++i) d = std::max(d, std::abs(p_[i] - o.p_[i]));
  return d;
}

StochasticMatrix::StochasticMatrix(MatD m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) throw InputError("stochastic matrix must be square");
  for (Eigen::Index i = 0; i < m_.rows(); ++i) {
    RowVecD r = m_.row(i);
    check_probability_row(r.data(), static_cast<std::size_t>(r.size()), "stochastic matrix row");
  }
}

StochasticMatrix::StochasticMatrix(MatD m, const AdjacencyMatrix& adj) : StochasticMatrix(std::move(m)) {
  if (!(support() == adj)) throw InputError("stochastic matrix support differs from the adjacency matrix");
}

double StochasticMatrix::log_entry(std::size_t s, std::size_t t) const {
  const double v = m_(s, t);
  return v > 0 ? std::log(v) : -std::numeric_limits<double>::infinity();
}

AdjacencyMatrix StochasticMatrix::support() const {
  std::vector<std::vector<int>> rows(size(), std::vector<int>(size(), 0));
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) rows[i][j] = m_(i, j) > 0 ? 1 : 0;
  return AdjacencyMatrix(std::move(rows));
}

StochasticMatrix golden_matrix() { return perturbed_matrix(1.0); }

ProbVector golden_stationary() {
  const double a = 1.0 / kSqrt5, b = 1.0 / (kPhi * kSqrt5);
  return ProbVector(std::vector<double>{a, b, b});
}

StochasticMatrix perturbed_matrix(double lambda) {
  if (!(lambda >= 1.0) || !std::isfinite(lambda)) throw InputError("perturbation lambda must be >= 1");
  MatD m(3, 3);
  const double lp = lambda * kPhi;
  // 1/phi and 1/phi^2 written as phi/(1+phi) and 1/(1+phi).
  m << lp / (1 + lp), 0, 1 / (1 + lp),
       kPhi / (1 + kPhi), 0, 1 / (1 + kPhi),
       0, 1, 0;
  return StochasticMatrix(std::move(m), AdjacencyMatrix::golden());
}

MatR perturbed_matrix_real(const Real& lambda) {
  if (lambda < 1) throw InputError("perturbation lambda must be >= 1");
  const Real phi = phi_real();
  const Real lp = lambda * phi;
  MatR m(3, 3);
  m(0, 0) = lp / (1 + lp);
  m(0, 1) = 0;
  m(0, 2) = Real(1) / (1 + lp);
  m(1, 0) = phi / (1 + phi);
  m(1, 1) = 0;
  m(1, 2) = Real(1) / (1 + phi);
  m(2, 0) = 0;
  m(2, 1) = 1;
  m(2, 2) = 0;
  return m;
}

MatR golden_matrix_real() { return perturbed_matrix_real(Real(1)); }

RowVecR golden_stationary_real() {
  const Real s5 = boost::multiprecision::sqrt(Real(5));
  RowVecR r(3);
  r(0) = 1 / s5;
  r(1) = 1 / (phi_real() * s5);
  r(2) = r(1);
  return r;
}

ProbVector stationary_distribution(const StochasticMatrix& p) {
  if (!mixing_index(p.support()))
    throw InputError("stationary_distribution: support is reducible or periodic");
  RowVecD pi = stationary_solve<double>(p.matrix());
  // Clean tiny negative round-off and renormalise.
  for (Eigen::Index i = 0; i < pi.size(); ++i) pi(i) = std::max(pi(i), 0.0);
  pi /= pi.sum();
  return ProbVector(pi);
}

namespace {

template <class T>
T max_relative(const Mat<T>& dev, const RowVec<T>& pi) {
  using std::abs;
  T best = 0;
  for (Eigen::Index s = 0; s < dev.rows(); ++s)
    for (Eigen::Index t = 0; t < dev.cols(); ++t) best = std::max<T>(best, abs(dev(s, t)) / pi(t));
  return best;
}

}  // namespace

double relative_deviation(const StochasticMatrix& p, std::uint64_t k) {
  const RowVecD pi = stationary_distribution(p).row();
  const MatD pk = matrix_power<double>(p.matrix(), BigInt(k));
  MatD dev = pk - MatD::Ones(pk.rows(), 1) * pi;
  return max_relative<double>(dev, pi);
}

std::uint64_t relative_mixing_time(const StochasticMatrix& p, double eps, std::uint64_t scan_cap) {
  if (!(eps > 0)) throw InputError("mixing tolerance must be positive");
  if (eps < 1e-13)
    throw PrecisionError("tolerance " + to_decimal(eps) +
                         " is below double precision; use the extended precision scan");
  const RowVecD pi = stationary_distribution(p).row();
  const auto n = pi.size();
  // Deviation recurrence D_{k+1} = D_k P with D_0 = I - 1 pi.
  MatD dev = MatD::Identity(n, n) - MatD::Ones(n, 1) * pi;
  for (std::uint64_t k = 1; k <= scan_cap; ++k) {
    dev = (dev * p.matrix()).eval();
    if (max_relative<double>(dev, pi) <= eps) return k;
  }
  throw CapExceeded("relative mixing time exceeds scan cap", std::to_string(scan_cap));
}

MixingScan relative_mixing_time_extended(const MatR& p, const Real& log_eps, std::uint64_t scan_cap) {
  const unsigned bits = current_precision_bits();
  // The deviation is resolved only well above the rounding floor.
  const Real floor_log = -Real(bits - 32) * boost::multiprecision::log(Real(2));
  if (log_eps < floor_log)
    throw PrecisionError("tolerance exp(" + to_decimal(log_eps) + ") is below the " + std::to_string(bits) +
                         "-bit precision floor; raise the working precision");
  const RowVecR pi = stationary_solve<Real>(p);
  const auto n = pi.size();
  MatR dev = MatR::Identity(n, n) - MatR::Ones(n, 1) * pi;
  for (std::uint64_t k = 1; k <= scan_cap; ++k) {
    dev = (dev * p).eval();
    const Real d = max_relative<Real>(dev, pi);
    if (d == 0) return {BigInt(k), Real(-std::numeric_limits<double>::infinity())};
    const Real ld = boost::multiprecision::log(d);
    if (ld <= log_eps) return {BigInt(k), ld};
  }
  throw CapExceeded("relative mixing time exceeds scan cap", std::to_string(scan_cap));
}

namespace {

// log of the relative deviation of Q at k = 1.
Real golden_log_dev1() {
  const MatR q = golden_matrix_real();
  const RowVecR pi = golden_stationary_real();
  MatR dev = q - MatR::Ones(3, 1) * pi;
  return boost::multiprecision::log(max_relative<Real>(dev, pi));
}

}  // namespace

Real golden_log_relative_deviation(const BigInt& k) {
  if (k < 1) throw InputError("k must be >= 1");
  // Q^k - 1 pi = (-1/phi^2)^{k-1} (Q - 1 pi) for k >= 1 since Q is diagonalisable.
  return golden_log_dev1() - 2 * Real(k - 1) * boost::multiprecision::log(phi_real());
}

BigInt golden_relative_mixing_time(const Real& log_eps) {
  const Real excess = golden_log_dev1() - log_eps;
  if (excess <= 0) return 1;
  return 1 + ceil_to_int(excess / (2 * boost::multiprecision::log(phi_real())));
}

namespace {

void check_dp(const ProbVector& pi, const StochasticMatrix& p, std::size_t n, std::size_t cap) {
  if (pi.size() != p.size()) throw InputError("dp: vector/matrix size mismatch");
  if (n == 0) throw InputError("dp: n must be positive");
  if (n > cap)
    throw CapExceeded("dp length " + std::to_string(n) + " exceeds cap " + std::to_string(cap) +
                          "; use a Monte Carlo estimate instead",
                      std::to_string(n));
}

// Dense table f[c * S + s] with an active window [lo, hi] of counts.
struct CountTable {
  std::size_t states;
  std::vector<double> f;
  std::size_t lo = 0, hi = 0;
};

void shrink(CountTable& t) {
  auto zero_at = [&](std::size_t c) {
    for (std::size_t s = 0; s < t.states; ++s)
      if (t.f[c * t.states + s] != 0) return false;
    return true;
  };
  while (t.lo < t.hi && zero_at(t.lo)) ++t.lo;
  while (t.hi > t.lo && zero_at(t.hi)) --t.hi;
}

}  // namespace

double dp_frequency_event(const ProbVector& pi, const StochasticMatrix& p, std::size_t n, double lo,
                          double hi, State state, std::size_t cap) {
  check_dp(pi, p, n, cap);
  const std::size_t S = p.size();
  CountTable t{S, std::vector<double>((n + 1) * S, 0.0)};
  // X_1 ~ pi P.
  for (std::size_t s = 0; s < S; ++s)
    for (std::size_t u = 0; u < S; ++u) t.f[(u == state ? 1 : 0) * S + u] += pi[s] * p(s, u);
  t.lo = 0;
  t.hi = 1;
  std::vector<double> next(t.f.size());
  for (std::size_t j = 2; j <= n; ++j) {
    std::fill(next.begin() + t.lo * S, next.begin() + std::min(t.hi + 2, n + 1) * S, 0.0);
    for (std::size_t c = t.lo; c <= t.hi; ++c)
      for (std::size_t s = 0; s < S; ++s) {
        const double m = t.f[c * S + s];
        if (m == 0) continue;
        for (std::size_t u = 0; u < S; ++u) {
          const double w = p(s, u);
          if (w == 0) continue;
          next[(c + (u == state ? 1 : 0)) * S + u] += m * w;
        }
      }
    t.hi = std::min(t.hi + 1, n);
    std::swap(t.f, next);
    shrink(t);
  }
  double mass = 0;
  for (std::size_t c = t.lo; c <= t.hi; ++c) {
    const double frac = static_cast<double>(c) / static_cast<double>(n);
    if (frac > lo && frac < hi)
      for (std::size_t s = 0; s < S; ++s) mass += t.f[c * S + s];
  }
  return std::min(mass, 1.0);
}

double dp_pair_event(const ProbVector& pi, const StochasticMatrix& p, std::size_t n, double threshold,
                     State a, State b, std::size_t cap) {
  check_dp(pi, p, n, cap);
  const std::size_t S = p.size();
  CountTable t{S, std::vector<double>((n + 1) * S, 0.0)};
  for (std::size_t s = 0; s < S; ++s)
    for (std::size_t u = 0; u < S; ++u) t.f[u] += pi[s] * p(s, u);
  t.lo = 0;
  t.hi = 0;
  std::vector<double> next(t.f.size());
  // Transition j -> j+1 for j = 1..n, each may add the pair (a, b).
  for (std::size_t j = 1; j <= n; ++j) {
    std::fill(next.begin() + t.lo * S, next.begin() + std::min(t.hi + 2, n + 1) * S, 0.0);
    for (std::size_t c = t.lo; c <= t.hi; ++c)
      for (std::size_t s = 0; s < S; ++s) {
        const double m = t.f[c * S + s];
        if (m == 0) continue;
        for (std::size_t u = 0; u < S; ++u) {
          const double w = p(s, u);
          if (w == 0) continue;
          next[(c + ((s == a && u == b) ? 1 : 0)) * S + u] += m * w;
        }
      }
    t.hi = std::min(t.hi + 1, n);
    std::swap(t.f, next);
    shrink(t);
  }
  double mass = 0;
  for (std::size_t c = t.lo; c <= t.hi; ++c)
    if (static_cast<double>(c) / static_cast<double>(n) > threshold)
      for (std::size_t s = 0; s < S; ++s) mass += t.f[c * S + s];
  return std::min(mass, 1.0);
}

}  // namespace goldshift
