#include "goldshift/rn.hpp"

#include "goldshift/errors.hpp"

#include <algorithm>
#include <cmath>

namespace goldshift {

namespace {

constexpr double kRoundRel = 1e-13;

double log_one_factor(double lambda) { return std::log((1 + kPhi) / (1 + kPhi * lambda)); }

}  // namespace

BlockCounts block_counts(const Word& x, const BlockSchedule& sched, int level, EdgePair edge, const BigInt& shift) {
  if (level < 1 || static_cast<std::size_t>(level) > sched.level_count())
    throw InputError("block_counts: level " + std::to_string(level) + " not in schedule");
  const auto& lv = sched.levels()[static_cast<std::size_t>(level - 1)];
  const BigInt a = lv.M_prev + shift, b = lv.N + shift;
  const BigInt need = edge == EdgePair::Literal ? b : b - 1;
  if (!x.covers(a, need))
    throw InputError("block_counts: word does not cover the block [" + a.str() + ", " + need.str() + "]");
  BlockCounts c{level, 0, 0};
  const std::size_t i0 = static_cast<std::size_t>(a - x.start);
  const std::size_t i1 = static_cast<std::size_t>(b - x.start);
  const std::size_t pair_end = edge == EdgePair::Literal ? i1 : i1 - 1;
  for (std::size_t i = i0; i < i1; ++i) c.L += x.symbols[i] == 0;
  for (std::size_t i = i0; i < pair_end; ++i) c.V += x.symbols[i] == 0 && x.symbols[i + 1] == 0;
  return c;
}

double RNResult::value() const { return std::exp(log_value); }

bool RNResult::overlaps(const RNResult& o) const { return std::abs(log_value - o.log_value) <= eta + o.eta; }

RNResult rn_analytic(const MeasureSpec& spec, const Word& x, const BigInt& n, int t) {
  const auto& sched = spec.schedule();
  const auto levels = static_cast<int>(sched.level_count());
  if (t < 0 || t > levels) throw InputError("rn_analytic: truncation level out of range");
  RNResult r;
  r.truncation_level = t;
  if (t == 0 && levels == 0) return r;
  if (t >= 1) {
    const auto& top = sched.levels()[static_cast<std::size_t>(t - 1)];
    if (n < top.N) throw InputError("rn_analytic: need n >= N_t");
    if (top.M && n >= *top.M - top.N) throw InputError("rn_analytic: need n < m_t");
  } else if (n < 0) {
    throw InputError("rn_analytic: need n >= 0");
  }
  double sum = 0, mag = 0;
  for (int k = 1; k <= t; ++k) {
    const BlockCounts a = block_counts(x, sched, k);
    const BlockCounts b = block_counts(x, sched, k, EdgePair::Literal, n);
    const double lam = sched.lambda(k);
    const double tl = static_cast<double>(b.L - a.L) * log_one_factor(lam);
    const double tv = static_cast<double>(b.V - a.V) * std::log(lam);
    sum += tl + tv;
    mag += std::abs(tl) + std::abs(tv);
  }
  // Untreated levels: at most 2 min(n, n_u) positions, each within lambda_u^{+-1}.
  double trunc = 0;
  for (int u = t + 1; u <= levels; ++u) {
    const auto& lv = sched.levels()[static_cast<std::size_t>(u - 1)];
    const BigInt nu = lv.N - lv.M_prev;
    trunc += 2 * to_double(std::min(n, nu)) * std::log(lv.lambda);
  }
  r.log_value = sum;
  r.eta = trunc + kRoundRel * (1 + mag);
  return r;
}

BigInt last_contributing_index(const BlockSchedule& sched, const BigInt& n) {
  const BigInt end = sched.perturbed_end() + n + 1;
  const auto segs = sched.contributing(n, 0, end);
  return segs.empty() ? BigInt(-1) : segs.back().end - 1;
}

RNResult rn_direct(const MeasureSpec& spec, const Word& x, const BigInt& n, const BigInt& K) {
  if (n < 0) throw InputError("rn_direct: n must be >= 0");
  if (K < 0) throw InputError("rn_direct: cutoff must be >= 0");
  const auto& sched = spec.schedule();
  RNResult r;
  r.truncation_level = static_cast<int>(sched.level_count());
  if (n == 0) return r;
  const BigInt end = sched.perturbed_end() + n + 1;
  double sum = 0, mag = 0, tail = 0;
  for (const auto& seg : sched.contributing(n, 0, end)) {
    const auto& Ps = sched.matrix(seg.level_shifted);
    const auto& Ph = sched.matrix(seg.level_here);
    const BigInt stop = std::min(seg.end, K + 1);
    if (seg.begin < stop) {
      if (!x.covers(seg.begin, stop)) throw InputError("rn_direct: word does not cover [0, K+1]");
      const std::size_t i0 = static_cast<std::size_t>(seg.begin - x.start);
      const std::size_t i1 = static_cast<std::size_t>(stop - x.start);
      for (std::size_t i = i0; i < i1; ++i) {
        const State s = x.symbols[i], u = x.symbols[i + 1];
        const double term = Ps.log_entry(s, u) - Ph.log_entry(s, u);
        if (!std::isfinite(term)) throw InputError("rn_direct: word is not admissible");
        sum += term;
        mag += std::abs(term);
      }
    }
    if (seg.end > K + 1) {
      const BigInt from = std::max(seg.begin, K + 1);
      tail += to_double(seg.end - from) *
              (std::log(sched.lambda(seg.level_shifted)) + std::log(sched.lambda(seg.level_here)));
    }
  }
  r.log_value = sum;
  r.eta = tail + kRoundRel * (1 + mag);
  return r;
}

bool ChangeOfVariables::holds() const { return std::abs(std::log(lhs) - std::log(rhs)) <= tolerance; }

ChangeOfVariables check_change_of_variables(const MeasureSpec& spec, const Word& B, const BigInt& n,
                                            std::size_t max_window) {
  if (n < 0) throw InputError("change of variables: n must be >= 0");
  const auto& sched = spec.schedule();
  const BigInt K = last_contributing_index(sched, n);
  const BigInt lo = std::min(B.first(), BigInt(0));
  const BigInt hi = std::max(B.last(), K + 1);
  const BigInt width = hi - lo + 1;
  if (width > BigInt(max_window))
    throw CapExceeded("change-of-variables window of " + width.str() + " symbols exceeds cap", width.str());
  const auto adj = AdjacencyMatrix::golden();

  ChangeOfVariables out;
  Word shifted = B;
  shifted.start = B.start - n;
  out.lhs = cylinder_measure(spec, shifted);

  const std::size_t off = static_cast<std::size_t>(B.first() - lo);
  double rhs = 0, mag = 0;
  for (Word R : enumerate_admissible(adj, static_cast<std::size_t>(width))) {
    if (!std::equal(B.symbols.begin(), B.symbols.end(), R.symbols.begin() + static_cast<std::ptrdiff_t>(off)))
      continue;
    R.start = lo;
    const double m = cylinder_measure(spec, R);
    if (m == 0) continue;
    const RNResult rn = K >= 0 ? rn_direct(spec, R, n, std::max(K, BigInt(0))) : RNResult{};
    rhs += m * rn.value();
    mag += m * rn.value();
    ++out.refinements;
  }
  out.rhs = rhs;
  out.tolerance = 1e-11 * (1 + mag / std::max(rhs, 1e-300));
  return out;
}

}  // namespace goldshift
