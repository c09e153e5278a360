#include "goldshift/construction.hpp"

#include "goldshift/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace goldshift {

namespace bmp = boost::multiprecision;

namespace {

// Integers beyond this many bits are kept only through their logarithm.
constexpr std::size_t kMaxIntegerBits = std::size_t{1} << 20;
// Above this precision the mixing scans switch to closed forms.
constexpr unsigned kMaxScanBits = 1u << 14;
constexpr std::uint64_t kScanCap = 1'000'000;

Real ln2() { return bmp::log(Real(2)); }
Real pow2_neg(int l) { return bmp::pow(Real(2), -l); }
Real log_of(const BigInt& v) { return bmp::log(Real(v)); }

double confidence_at(const Profile& p, int l) { return p.confidence.value_or(1.0 - 1.0 / l); }

// log of m' in the finite-approximation bound 2 m' ln(lambda_l) < 2^-l.
Real log_horizon(const LevelParams& prev, const Profile& profile) {
  Real lm = prev.m ? log_of(*prev.m) : prev.log_m;
  if (profile.horizon_cap) lm = std::min<Real>(lm, Real(std::log(*profile.horizon_cap)));
  return lm;
}

// Smallest q >= start with pred(q), for pred monotone; guess seeds the search.
BigInt smallest_true(const BigInt& start, BigInt guess, const std::function<bool(const BigInt&)>& pred) {
  if (pred(start)) return start;
  BigInt lo = start;
  BigInt hi = std::max(guess, start + 1);
  if (pred(hi)) {
    if (hi - 1 > lo && !pred(hi - 1)) return hi;
  } else {
    lo = hi;
    do {
      lo = hi;
      hi *= 2;
    } while (!pred(hi));
  }
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    if (pred(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

Real stationary_gap(const Real& lambda) {
  const RowVecR a = stationary_solve<Real>(perturbed_matrix_real(lambda));
  const RowVecR b = golden_stationary_real();
  Real d = 0;
  for (int i = 0; i < 3; ++i) d = std::max<Real>(d, Real(bmp::abs(a(i) - b(i))));
  return d;
}

Real norm_inf(const RowVecR& v) {
  Real d = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) d = std::max<Real>(d, Real(bmp::abs(v(i))));
  return d;
}

ProbVector to_prob(const RowVecR& v) {
  std::vector<double> p(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) p[static_cast<std::size_t>(i)] = v(i).convert_to<double>();
  double s = 0;
  for (double x : p) s += x;
  for (double& x : p) x /= s;
  return ProbVector(p);
}

// Bits needed to hold exp(log_value) plus a guard margin; saturates.
std::uint64_t bits_for_log(const Real& log_value) {
  const Real b = log_value / ln2();
  if (b > Real(std::uint64_t{1} << 40)) return std::uint64_t{1} << 40;
  return static_cast<std::uint64_t>(bmp::ceil(std::max<Real>(b, Real(0))).convert_to<double>()) + 64;
}

unsigned clamp_bits(std::uint64_t b) { return static_cast<unsigned>(std::min<std::uint64_t>(b, kMaxScanBits)); }

BigInt M_prev_of(int l, const Construction& so_far) {
  if (l == 1) return so_far.profile.M0;
  const LevelParams& prev = so_far.levels.at(static_cast<std::size_t>(l - 2));
  if (!prev.M)
    throw ConstructionError("level " + std::to_string(l) + " cannot be built: M_" + std::to_string(l - 1) +
                            " is beyond the representable range (only log M is known)");
  return *prev.M;
}

// log ||v Q^k||_inf for a zero-sum v, in closed form: v Q lies in the
// eigenspace of -1/phi^2.
Real golden_log_marginal_gap(const RowVecR& v, const BigInt& k) {
  if (k == 0) return bmp::log(norm_inf(v));
  const RowVecR v1 = v * golden_matrix_real();
  return bmp::log(norm_inf(v1)) - 2 * Real(k - 1) * bmp::log(phi_real());
}

}  // namespace

Profile Profile::full() { return Profile{}; }

Profile Profile::desk() {
  Profile p;
  p.mode = Mode::Desk;
  p.mixing_tol = 1e-2;
  p.failure_base = 1e-2;
  p.horizon_cap = 1e4;
  return p;
}

Mode parse_mode(const std::string& s) {
  if (s == "full") return Mode::Full;
  if (s == "desk") return Mode::Desk;
  throw InputError("unknown profile '" + s + "' (expected full or desk)");
}

Real distortion_value(const Real& x) {
  if (x < 1) throw InputError("distortion is defined on [1, inf)");
  const Real phi = phi_real();
  return x * (1 + phi) / (1 + phi * x);
}

Real distortion_inverse(const Real& y) {
  const Real phi = phi_real();
  if (y < 1 || y >= (1 + phi) / phi) throw InputError("distortion inverse needs 1 <= y < (1+phi)/phi");
  return y / (1 + phi - phi * y);
}

double distortion_value(double x) {
  if (x < 1) throw InputError("distortion is defined on [1, inf)");
  return x * (1 + kPhi) / (1 + kPhi * x);
}

double distortion_inverse(double y) {
  if (y < 1 || y >= (1 + kPhi) / kPhi) throw InputError("distortion inverse needs 1 <= y < (1+phi)/phi");
  return y / (1 + kPhi - kPhi * y);
}

Real log_mixing_tol(const Profile& profile, const BigInt& N) {
  if (profile.mixing_tol) return Real(std::log(*profile.mixing_tol));
  return -3 * Real(N) * bmp::log(Real(3));
}

Real log_failure_base(const Profile& profile, const BigInt& N) {
  if (profile.failure_base) return Real(std::log(*profile.failure_base));
  return -3 * Real(N) * bmp::log(Real(9));
}

RowVecR marginal_real(const std::vector<LevelParams>& levels, const BigInt& j) {
  const MatR q = golden_matrix_real();
  RowVecR pi = golden_stationary_real();
  BigInt cur = 1;
  auto advance = [&](const MatR& m, const BigInt& to) {
    if (to > cur) {
      pi = propagate<Real>(pi, m, to - cur);
      cur = to;
    }
  };
  for (std::size_t i = 0; i < levels.size() && cur < j; ++i) {
    const LevelParams& L = levels[i];
    const BigInt M_prev = L.N - L.n;
    advance(q, std::min(j, M_prev));
    advance(perturbed_matrix_real(L.lambda), std::min(j, L.N));
  }
  advance(q, j);
  return pi;
}

LambdaChoice choose_lambda(int l, const Construction& so_far) {
  const Profile& profile = so_far.profile;
  if (l == 1) {
    Real lambda(profile.lambda1);
    if (!(lambda > 1)) throw InputError("lambda_1 must be > 1");
    return {lambda, 1};
  }
  const LevelParams& prev = so_far.levels.at(static_cast<std::size_t>(l - 2));
  const Real log_mp = log_horizon(prev, profile);
  // ln(lambda_l) must stay below B = 2^-l / (2 m').
  const Real log_B = -Real(l + 1) * ln2() - log_mp;
  const unsigned bits = current_precision_bits();
  if (log_B < -Real(bits - 64) * ln2())
    throw PrecisionError("level " + std::to_string(l) + ": lambda - 1 ~ exp(" + to_decimal(log_B) +
                         ") is below the " + std::to_string(bits) + "-bit mantissa; raise --precision");
  const Real mp = bmp::exp(log_mp);
  const Real bound = pow2_neg(l);

  auto lambda_for = [&](const BigInt& q) { return distortion_inverse(bmp::exp(so_far.log_r / Real(prev.K * q))); };
  auto pred = [&](const BigInt& q) {
    const Real lam = lambda_for(q);
    return 2 * mp * bmp::log(lam) < bound && stationary_gap(lam) < bound;
  };
  const Real log_y_max = bmp::log(distortion_value(bmp::exp(bmp::exp(log_B))));
  const BigInt K_min = ceil_to_int(so_far.log_r / log_y_max);
  BigInt guess = (K_min + prev.K - 1) / prev.K;
  const BigInt q = smallest_true(2, std::max(guess, BigInt(2)), pred);
  return {lambda_for(q), prev.K * q};
}

BigInt choose_n(int l, const Construction& so_far, const LambdaChoice& lc, bool* symbolic, double* freq_mass,
                double* pair_mass) {
  const Profile& profile = so_far.profile;
  if (symbolic) *symbolic = false;
  if (l == 1) return profile.n1;
  const BigInt n0 = 20 * lc.K;
  const BigInt cap = profile.dp_cap;
  if (n0 > cap) {
    if (symbolic) *symbolic = true;
    return n0;
  }
  const double conf = confidence_at(profile, l);
  const ProbVector pi = to_prob(marginal_real(so_far.levels, M_prev_of(l, so_far)));
  const StochasticMatrix P = perturbed_matrix(lc.lambda.convert_to<double>());
  const double w = std::ldexp(1.0, -l);
  double fm = 0, pm = 0;
  auto eval = [&](const BigInt& n) {
    const auto nn = n.convert_to<std::size_t>();
    fm = dp_frequency_event(pi, P, nn, 1 / kSqrt5 - w, 1 / kSqrt5 + w, 0, profile.dp_cap);
    pm = dp_pair_event(pi, P, nn, 1.0 / 15.0, 1, 2, profile.dp_cap);
    return fm > conf && pm > conf;
  };
  BigInt lo = n0, hi = n0;
  if (!eval(n0)) {
    for (;;) {
      lo = hi;
      hi *= 2;
      if (hi > cap) {
        if (symbolic) *symbolic = true;
        return hi;
      }
      if (eval(hi)) break;
    }
    while (hi - lo > 1) {
      BigInt mid = (lo + hi) / 2;
      if (eval(mid))
        hi = mid;
      else
        lo = mid;
    }
  }
  eval(hi);
  if (freq_mass) *freq_mass = fm;
  if (pair_mass) *pair_mass = pm;
  return hi;
}

BigInt choose_mixing_k(int l, const Construction& so_far, const LevelParams& partial) {
  (void)l;
  const Real log_eps = log_mixing_tol(so_far.profile, partial.N);
  std::vector<LevelParams> levels = so_far.levels;
  levels.push_back(partial);
  const std::uint64_t need = bits_for_log(-log_eps);
  BigInt k_rel, k_marg;
  if (need <= kMaxScanBits) {
    PrecisionGuard guard(std::max(so_far.profile.precision_bits, clamp_bits(need)));
    const Real le = log_eps;
    k_rel = relative_mixing_time_extended(golden_matrix_real(), le, kScanCap).k;
    const MatR q = golden_matrix_real();
    RowVecR v = marginal_real(levels, partial.N) - golden_stationary_real();
    k_marg = 0;
    while (!(bmp::log(norm_inf(v)) < le)) {
      v = (v * q).eval();
      if (++k_marg > kScanCap) throw CapExceeded("marginal mixing scan exceeds cap", std::to_string(kScanCap));
    }
  } else {
    k_rel = golden_relative_mixing_time(log_eps);
    const RowVecR v = marginal_real(levels, partial.N) - golden_stationary_real();
    const RowVecR v1 = v * golden_matrix_real();
    const Real n1 = norm_inf(v1);
    if (n1 == 0 || bmp::log(n1) < log_eps) {
      k_marg = 1;
    } else {
      k_marg = 1 + ceil_to_int((bmp::log(n1) - log_eps) / (2 * bmp::log(phi_real())));
    }
  }
  return std::max({partial.N + 1, k_rel, k_marg});
}

std::optional<BigInt> choose_m(int l, const Construction& so_far, const LevelParams& partial, Real* log_m) {
  const Profile& profile = so_far.profile;
  if (l == 1) {
    if (log_m) *log_m = log_of(profile.m1);
    return profile.m1;
  }
  const Real lam1(profile.lambda1);
  const Real log_delta = log_failure_base(profile, partial.N);
  auto log_neg_log1p = [&](const Real& ld) {
    // log(-log(1 - delta)); for tiny delta this is log delta + delta/2.
    if (ld < -40) return ld + bmp::exp(ld) / 2;
    return bmp::log(-bmp::log1p(-bmp::exp(ld)));
  };
  auto log_bounds = [&](Real* la, Real* lb) {
    *la = bmp::log(4 * Real(partial.k_mix) * bmp::log(Real(l))) - log_neg_log1p(log_delta);
    const Real t = 2 * Real(partial.N) * bmp::log(lam1);
    *lb = t + bmp::log1p(Real(partial.N) * bmp::exp(-t));
  };
  Real la, lb;
  log_bounds(&la, &lb);
  const Real lm = std::max<Real>(la, lb);
  const std::uint64_t need = bits_for_log(lm);
  if (need > kMaxIntegerBits) {
    // Any m above the bound will do; step a few ulps up so that recomputing
    // the conditions, which cancel terms of size |lm|, cannot land below it.
    if (log_m) *log_m = lm + bmp::abs(lm) * bmp::ldexp(Real(1), 16 - static_cast<int>(current_precision_bits()));
    return std::nullopt;
  }
  PrecisionGuard guard(std::max(profile.precision_bits, static_cast<unsigned>(need) + 64));
  const Real delta = bmp::exp(log_delta);
  const Real a = 4 * Real(partial.k_mix) * bmp::log(Real(l)) / -bmp::log1p(-delta);
  const Real b = Real(partial.N) + bmp::pow(lam1, 2 * Real(partial.N));
  BigInt m = ceil_to_int(std::max<Real>(a, b));
  if (log_m) *log_m = log_of(m);
  return m;
}

MeasureSpec spec_from_params(const std::vector<LevelParams>& levels, const Profile& profile) {
  std::vector<ScheduleLevel> sl;
  for (const auto& L : levels) sl.push_back({L.lambda_d, L.N - L.n, L.N, L.M});
  TailRule tail;
  if (!levels.empty()) {
    tail.kind = TailRule::Kind::Construction;
    const LevelParams& last = levels.back();
    double lm = last.m ? std::log(to_double(*last.m)) : last.log_m.convert_to<double>();
    if (last.m && !std::isfinite(lm)) lm = last.log_m.convert_to<double>();
    if (profile.horizon_cap) lm = std::min(lm, std::log(*profile.horizon_cap));
    tail.log_m_bound = lm;
  }
  return MeasureSpec(BlockSchedule(std::move(sl)), tail);
}

Construction build_measure_spec(int levels, const Profile& profile) {
  if (levels < 0) throw InputError("levels must be >= 0");
  if (profile.M0 < 1 || profile.n1 < 1 || profile.m1 < 1) throw InputError("base-case constants must be positive");
  PrecisionGuard guard(profile.precision_bits);
  Construction c;
  c.profile = profile;
  {
    const Real lam1(profile.lambda1);
    if (!(lam1 > 1)) throw InputError("lambda_1 must be > 1, got " + profile.lambda1);
    c.log_r = bmp::log(distortion_value(lam1));
  }
  for (int l = 1; l <= levels; ++l) {
    LevelParams L;
    L.l = l;
    L.working_bits = profile.precision_bits;
    const BigInt M_prev = M_prev_of(l, c);
    const LambdaChoice lc = choose_lambda(l, c);
    // Stored at profile precision; lc.lambda may carry extra working bits.
    L.lambda = Real(lc.lambda, Real::default_precision());
    L.lambda_d = lc.lambda.convert_to<double>();
    L.K = lc.K;
    for (const auto& P : c.levels) L.p[P.l] = L.K / P.K;
    L.p[l] = 1;
    L.n = choose_n(l, c, lc, &L.dp_symbolic, &L.freq_mass, &L.pair_mass);
    L.N = M_prev + L.n;
    L.k_mix = choose_mixing_k(l, c, L);
    L.working_bits = std::max(profile.precision_bits, clamp_bits(bits_for_log(-log_mixing_tol(profile, L.N))));
    L.m = choose_m(l, c, L, &L.log_m);
    if (L.m) L.M = L.N + *L.m;
    c.levels.push_back(std::move(L));
  }
  c.spec = spec_from_params(c.levels, profile);
  return c;
}

std::string status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Vacuous: return "vacuous";
    case Status::Symbolic: return "symbolic";
  }
  return "unknown";
}

bool ConditionReport::all_pass() const {
  return std::none_of(entries.begin(), entries.end(), [](const ConditionEntry& e) { return e.status == Status::Fail; });
}

const ConditionEntry* ConditionReport::find(int level, const std::string& name) const {
  for (const auto& e : entries)
    if (e.level == level && e.name == name) return &e;
  return nullptr;
}

ConditionReport validate_params(const std::vector<LevelParams>& levels, const Profile& profile, const Real& log_r) {
  PrecisionGuard guard(profile.precision_bits);
  ConditionReport rep;
  auto add = [&](int l, std::string name, Status st, bool strict, std::string slack, std::string detail) {
    rep.entries.push_back({l, std::move(name), st, strict, std::move(slack), std::move(detail)});
  };
  auto judge = [](const Real& slack, bool strict) {
    return (strict ? slack > 0 : slack >= 0) ? Status::Pass : Status::Fail;
  };
  const Real lam1(profile.lambda1);

  for (std::size_t i = 0; i < levels.size(); ++i) {
    const LevelParams& L = levels[i];
    const int l = L.l;
    const LevelParams* prev = i > 0 ? &levels[i - 1] : nullptr;
    const BigInt M_prev = L.N - L.n;

    {
      bool ok = L.n > 0 && (!prev || (prev->M && *prev->M == M_prev)) && (i > 0 || M_prev == profile.M0);
      if (L.M) ok = ok && L.m && *L.M == L.N + *L.m;
      add(l, "block-order", ok ? Status::Pass : Status::Fail, true, ok ? "exact" : "violated",
          L.M ? "M_{l-1} < N_l < M_l" : "M_l known only through log m_l");
    }
    {
      bool ok = true;
      std::string detail = "K_l is a multiple of K_{l-1} and K_l log f(lambda_l) = log r";
      if (prev) ok = L.K % prev->K == 0;
      else ok = L.K == 1;
      for (const auto& P : levels)
        if (P.l <= l) {
          auto it = L.p.find(P.l);
          ok = ok && it != L.p.end() && it->second * P.K == L.K;
        }
      const Real drift = bmp::abs(Real(L.K) * bmp::log(distortion_value(L.lambda)) - log_r);
      // Rounding lambda moves K log f(lambda) by about K / (1 + phi lambda) ulps.
      const Real cond = bmp::abs(log_r) + Real(L.K) / (1 + phi_real() * L.lambda);
      const Real tol = bmp::ldexp(cond, -static_cast<int>(current_precision_bits()) + 32);
      ok = ok && drift <= tol;
      add(l, "lattice", ok ? Status::Pass : Status::Fail, false, to_decimal(drift), detail);
    }
    if (!prev) {
      add(l, "finite-approximation", Status::Vacuous, true, "", "base case");
    } else {
      const Real mp = bmp::exp(log_horizon(*prev, profile));
      const Real slack = pow2_neg(l) - 2 * mp * bmp::log(L.lambda);
      add(l, "finite-approximation", judge(slack, true), true, to_decimal(slack),
          profile.horizon_cap ? "2^-l - 2 min(m_{l-1}, cap) ln lambda_l" : "2^-l - 2 m_{l-1} ln lambda_l");
    }
    {
      const Real slack = pow2_neg(l) - stationary_gap(L.lambda);
      add(l, "stationary-closeness", judge(slack, true), true, to_decimal(slack), "2^-l - |pi_Q - pi_{Q_l}|_inf");
    }
    if (!prev) {
      add(l, "lattice-room", Status::Vacuous, false, "", "no earlier level");
    } else {
      BigInt pmax = 0;
      for (const auto& [k, v] : L.p)
        if (k < l) pmax = std::max(pmax, v);
      const Real slack = Real(L.n) / 20 - Real(pmax);
      add(l, "lattice-room", judge(slack, false), false, to_decimal(slack), "n_l/20 - max_k p(k,l)");
    }
    {
      const double conf = confidence_at(profile, l);
      if (conf <= 0) {
        add(l, "frequency-typicality", Status::Vacuous, true, "", "confidence 1 - 1/l is 0");
        add(l, "pair-typicality", Status::Vacuous, true, "", "confidence 1 - 1/l is 0");
      } else if (L.n > BigInt(profile.dp_cap)) {
        add(l, "frequency-typicality", Status::Symbolic, true, "", "n_l above the DP cap; not numerically verified");
        add(l, "pair-typicality", Status::Symbolic, true, "", "n_l above the DP cap; not numerically verified");
      } else {
        std::vector<LevelParams> before(levels.begin(), levels.begin() + static_cast<std::ptrdiff_t>(i));
        const ProbVector pi = to_prob(marginal_real(before, M_prev));
        const StochasticMatrix P = perturbed_matrix(L.lambda_d);
        const auto nn = L.n.convert_to<std::size_t>();
        const double w = std::ldexp(1.0, -l);
        const double fm = dp_frequency_event(pi, P, nn, 1 / kSqrt5 - w, 1 / kSqrt5 + w, 0, profile.dp_cap);
        const double pm = dp_pair_event(pi, P, nn, 1.0 / 15.0, 1, 2, profile.dp_cap);
        add(l, "frequency-typicality", fm > conf ? Status::Pass : Status::Fail, true, to_decimal(fm - conf),
            "DP mass " + to_decimal(fm) + " vs confidence " + to_decimal(conf));
        add(l, "pair-typicality", pm > conf ? Status::Pass : Status::Fail, true, to_decimal(pm - conf),
            "DP mass " + to_decimal(pm) + " vs confidence " + to_decimal(conf));
      }
    }
    const Real log_eps = log_mixing_tol(profile, L.N);
    {
      const Real slack = log_eps - golden_log_relative_deviation(L.k_mix);
      add(l, "relative-mixing", judge(slack, false), false, to_decimal(slack),
          "log eps_l - log max|Q^k(s,t)/pi(t) - 1| (closed form)");
    }
    {
      const std::uint64_t need = bits_for_log(-log_eps);
      Real slack;
      {
        PrecisionGuard g2(std::max(profile.precision_bits, clamp_bits(need)));
        std::vector<LevelParams> upto(levels.begin(), levels.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        const RowVecR v = marginal_real(upto, L.N) - golden_stationary_real();
        Real lg;
        if (need <= kMaxScanBits && L.k_mix <= 4096) {
          lg = bmp::log(norm_inf(propagate<Real>(v, golden_matrix_real(), L.k_mix)));
        } else {
          lg = golden_log_marginal_gap(v, L.k_mix);
        }
        slack = log_eps - lg;
      }
      add(l, "marginal-mixing", judge(slack, true), true, to_decimal(slack),
          "log eps_l - log |pi_{N_l} Q^k - pi_Q|_inf");
    }
    add(l, "mixing-after-block", L.k_mix > L.N ? Status::Pass : Status::Fail, true, (L.k_mix - L.N).str(),
        "k_l - N_l");
    if (l == 1) {
      add(l, "failure-budget", Status::Vacuous, false, "", "1/l = 1");
      add(l, "conservativity", Status::Vacuous, false, "", "base case; the bound is imposed from level 2 on");
      continue;
    }
    {
      const Real log_delta = log_failure_base(profile, L.N);
      const unsigned need = L.m ? static_cast<unsigned>(bit_length(*L.m)) + 96 : profile.precision_bits;
      Real s_fail, s_cons;
      std::string sf, sc;
      {
        PrecisionGuard g2(std::max(profile.precision_bits, need));
        if (L.m) {
          const Real m(*L.m);
          const Real delta = bmp::exp(log_delta);
          s_fail = -(m / (4 * Real(L.k_mix))) * bmp::log1p(-delta) - bmp::log(Real(l));
          s_cons = bmp::log(Real(*L.m - L.N)) - 2 * Real(L.N) * bmp::log(lam1);
        } else {
          // Log-domain check at the stored lower bound for log m.
          const Real lnl = log_delta < -40 ? log_delta : bmp::log(-bmp::log1p(-bmp::exp(log_delta)));
          s_fail = L.log_m - bmp::log(4 * Real(L.k_mix)) + lnl - bmp::log(bmp::log(Real(l)));
          // Same expression as the chooser, so the margin is exact.
          const Real t = 2 * Real(L.N) * bmp::log(lam1);
          s_cons = L.log_m - (t + bmp::log1p(Real(L.N) * bmp::exp(-t)));
        }
        sf = to_decimal(s_fail);
        sc = to_decimal(s_cons);
      }
      const std::string how = L.m ? "" : " (m_l symbolic, log domain)";
      add(l, "failure-budget", judge(s_fail, false), false, sf,
          "-(m_l / 4k_l) log(1 - delta_l) - log l" + how);
      add(l, "conservativity", judge(s_cons, false), false, sc, "log(m_l - N_l) - 2 N_l log lambda_1" + how);
    }
  }
  return rep;
}

}  // namespace goldshift
