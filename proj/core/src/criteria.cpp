#include "goldshift/criteria.hpp"

#include "goldshift/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace goldshift {
namespace bmp = boost::multiprecision;


namespace {

Real inf_real() { return Real(std::numeric_limits<double>::infinity()); }

// c(lambda) = (phi/(1+phi)^2)^2 [ (1+phi)/(4 phi) + (1 + lambda phi)/4 ]
Real envelope_coeff(const Real& lambda) {
  const Real phi = phi_real();
  const Real a = phi / ((1 + phi) * (1 + phi));
  return a * a * ((1 + phi) / (4 * phi) + (1 + lambda * phi) / 4);
}

Real log_sum_exp(const Real& a, const Real& b) {
  if (bmp::isinf(a) && a < 0) return b;
  const Real hi = std::max(a, b), lo = std::min(a, b);
  return hi + bmp::log1p(bmp::exp(lo - hi));
}

}  // namespace

Real hellinger_level_term(const Real& lambda) {
  if (lambda < 1) throw InputError("hellinger: lambda must be >= 1");
  const Real phi = phi_real();
  const Real p = lambda * phi / (1 + lambda * phi), q = phi / (1 + phi);
  const Real p3 = 1 / (1 + lambda * phi), q3 = 1 / (1 + phi);
  // sqrt(a) - sqrt(b) = (a - b) / (sqrt(a) + sqrt(b)) with a - b in closed form.
  const Real D = phi * (lambda - 1) / ((1 + lambda * phi) * (1 + phi));
  const Real s1 = D / (bmp::sqrt(p) + bmp::sqrt(q));
  const Real s3 = D / (bmp::sqrt(p3) + bmp::sqrt(q3));
  return 2 * (s1 * s1 + s3 * s3);
}

Real hellinger_envelope(const Real& lambda) { return 2 * envelope_coeff(lambda) * (lambda - 1) * (lambda - 1); }

bool HellingerReport::divergent() const { return bmp::isinf(tail_bound); }
bool HellingerReport::summable() const { return !divergent(); }
bool HellingerReport::tail_within_tolerance() const { return summable() && tail_bound < Real(tolerance); }
std::string HellingerReport::verdict() const { return divergent() ? "divergent dominating series" : "summable"; }

HellingerReport hellinger_criterion(const std::vector<Real>& lambdas, const TailRule& tail, int horizon,
                                    double tolerance) {
  const int stored = static_cast<int>(lambdas.size());
  if (horizon < 0 || horizon > stored) horizon = stored;
  HellingerReport r;
  r.horizon = horizon;
  r.tolerance = tolerance;
  r.tail_rule = tail.label();
  Real acc = 0;
  for (int l = 0; l < horizon; ++l) {
    r.terms.push_back(hellinger_level_term(lambdas[static_cast<std::size_t>(l)]));
    acc += r.terms.back();
    r.partial_sums.push_back(acc);
  }
  Real rest = 0;
  for (int l = horizon; l < stored; ++l) rest += hellinger_level_term(lambdas[static_cast<std::size_t>(l)]);
  switch (tail.kind) {
    case TailRule::Kind::Stationary:
      break;
    case TailRule::Kind::ConstantLambda:
      if (tail.lambda != 1.0) rest = inf_real();
      break;
    case TailRule::Kind::Construction: {
      // Next level u = stored + 1 has ln lambda_u < x = 2^-u / (2 m'); the tail
      // is dominated by 2 c e^{2x} x^2 times the geometric factor 4/3.
      const Real log_x = -Real(stored + 2) * bmp::log(Real(2)) - Real(tail.log_m_bound);
      const Real x = bmp::exp(log_x);
      const Real lam = bmp::exp(x);
      const Real log_tail =
          bmp::log(2 * envelope_coeff(lam)) + bmp::log(Real(4) / 3) + 2 * x + 2 * log_x;
      rest += bmp::exp(log_tail);
      break;
    }
  }
  r.tail_bound = rest;
  return r;
}

HellingerReport hellinger_criterion(const MeasureSpec& spec, int horizon, double tolerance) {
  std::vector<Real> lambdas;
  for (const auto& lv : spec.schedule().levels()) lambdas.push_back(Real(lv.lambda));
  return hellinger_criterion(lambdas, spec.tail_rule(), horizon, tolerance);
}

HellingerReport hellinger_criterion(const Construction& c, int horizon, double tolerance) {
  std::vector<Real> lambdas;
  for (const auto& L : c.levels) lambdas.push_back(L.lambda);
  return hellinger_criterion(lambdas, c.spec.tail_rule(), horizon, tolerance);
}

double hellinger_path_sum(const MeasureSpec& spec, const Word& x) {
  double s = 0;
  for (const auto& lv : spec.schedule().levels()) {
    const double h = hellinger_level_term(Real(lv.lambda)).template convert_to<double>() / 2;
    for (const BigInt& n : {lv.M_prev, lv.N})
      if (x.covers(n, n) && x.at(n) == 0) s += h;
  }
  return s;
}

ExactnessResult exactness_constant(const MeasureSpec& spec, int window) {
  if (window < 1) throw InputError("exactness: window must be >= 1");
  const auto& sched = spec.schedule();
  std::set<BigInt> marks{0, 1};
  for (const auto& lv : sched.levels()) {
    marks.insert(lv.M_prev);
    marks.insert(lv.N);
    if (lv.M) marks.insert(*lv.M);
  }
  std::set<std::vector<int>> patterns;
  for (const BigInt& b : marks)
    for (int d = -window; d <= window; ++d) {
      std::vector<int> pat;
      for (int i = 0; i < window; ++i) pat.push_back(sched.level_at(b + d + i));
      patterns.insert(pat);
    }
  ExactnessResult r;
  r.window = window;
  r.constant = std::numeric_limits<double>::infinity();
  for (const auto& pat : patterns) {
    MatD prod = MatD::Identity(3, 3);
    for (int l : pat) prod = prod * sched.matrix(l).matrix();
    const double mn = prod.minCoeff();
    if (mn < r.constant) {
      r.constant = mn;
      r.worst = pat;
    }
  }
  r.patterns = patterns.size();
  return r;
}

bool ConservativityReport::holds() const {
  return std::all_of(levels.begin(), levels.end(),
                     [](const ConservativityLevel& l) { return l.status != Status::Fail && l.partial_ok; });
}

ConservativityReport conservativity_report(const std::vector<LevelParams>& levels, const Profile& profile) {
  ConservativityReport r;
  r.stationary = levels.empty();
  if (levels.empty()) return r;
  const Real neg_inf = -inf_real();
  Real partial = neg_inf, excess = 0;
  for (const auto& L : levels) {
    ConservativityLevel e;
    e.level = L.l;
    if (L.l == 1) {
      // Base level: m_1 - N_1 = 0, no requirement.
      e.status = Status::Vacuous;
      e.log_term = neg_inf;
      e.log_partial_sum = partial;
      r.levels.push_back(e);
      continue;
    }
    PrecisionGuard guard(std::max(profile.precision_bits, L.working_bits));
    const Real N = Real(L.N);
    const Real t = 2 * N * bmp::log(levels.front().lambda);
    // margin = log(m - N) - t, the log of twice the term.
    Real margin;
    if (L.m) {
      const BigInt gap = *L.m - L.N;
      margin = gap > 0 ? bmp::log(Real(gap)) - t : neg_inf;
    } else {
      // With log m = t + log1p(N e^-t) + delta, log(m - N) - t = delta + log1p(N e^-t (1 - e^-delta)),
      // so delta is formed exactly as the chooser formed log m.
      const Real delta = L.log_m - (t + bmp::log1p(N * bmp::exp(-t)));
      margin = delta + bmp::log1p(-N * bmp::exp(-t) * bmp::expm1(-delta));
      e.status = Status::Symbolic;
    }
    e.log_term = margin - bmp::log(Real(2));
    if (margin < 0) e.status = Status::Fail;
    partial = log_sum_exp(partial, e.log_term);
    e.log_partial_sum = partial;
    // partial - (inductive levels)/2 is the sum of e^{term} - 1/2 over those levels.
    excess += bmp::expm1(margin) / 2;
    e.partial_ok = excess >= 0;
    r.levels.push_back(e);
  }
  return r;
}

}  // namespace goldshift
