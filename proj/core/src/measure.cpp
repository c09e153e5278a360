#include "goldshift/measure.hpp"

#include "goldshift/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace goldshift {

BlockSchedule::BlockSchedule() { matrices_.push_back(golden_matrix()); }

BlockSchedule::BlockSchedule(std::vector<ScheduleLevel> levels) : levels_(std::move(levels)) {
  matrices_.push_back(golden_matrix());
  BigInt prev_end = 1;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    const auto& L = levels_[i];
    const std::string tag = "level " + std::to_string(i + 1);
    if (i == 0 && L.M_prev < 1) throw InputError(tag + ": blocks must start at index >= 1");
    if (i > 0 && L.M_prev != prev_end) throw InputError(tag + ": M_{l-1} must equal the previous M_l");
    if (!(L.M_prev < L.N)) throw InputError(tag + ": need M_{l-1} < N_l");
    if (L.M && !(L.N < *L.M)) throw InputError(tag + ": need N_l < M_l");
    if (!L.M && i + 1 != levels_.size()) throw InputError(tag + ": only the last level may have unbounded M_l");
    matrices_.push_back(perturbed_matrix(L.lambda));
    if (L.M) prev_end = *L.M;
  }
}

int BlockSchedule::level_at(const BigInt& j) const {
  for (std::size_t i = 0; i < levels_.size(); ++i)
    if (j >= levels_[i].M_prev && j < levels_[i].N) return static_cast<int>(i + 1);
  return 0;
}

BigInt BlockSchedule::perturbed_end() const { return levels_.empty() ? BigInt(1) : levels_.back().N; }

std::vector<Segment> BlockSchedule::segments(const BigInt& a, const BigInt& b) const {
  std::vector<Segment> out;
  BigInt cur = a;
  while (cur < b) {
    const int lv = level_at(cur);
    BigInt end = b;
    if (lv > 0) {
      end = std::min(b, levels_[lv - 1].N);
    } else {
      for (const auto& L : levels_)
        if (L.M_prev > cur) {
          end = std::min(end, L.M_prev);
          break;
        }
    }
    out.push_back({cur, end, lv});
    cur = end;
  }
  return out;
}

std::vector<ShiftSegment> BlockSchedule::contributing(const BigInt& n, const BigInt& a, const BigInt& b) const {
  std::vector<ShiftSegment> out;
  if (n == 0 || !(a < b)) return out;
  std::vector<BigInt> cuts{a, b};
  for (const auto& L : levels_)
    for (const BigInt* x : {&L.M_prev, &L.N})
      for (BigInt y : {*x, *x + n})
        if (y > a && y < b) cuts.push_back(y);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const int ls = level_at(cuts[i] - n), lh = level_at(cuts[i]);
    if (ls == lh) continue;
    if (!out.empty() && out.back().end == cuts[i] && out.back().level_shifted == ls && out.back().level_here == lh)
      out.back().end = cuts[i + 1];
    else
      out.push_back({cuts[i], cuts[i + 1], ls, lh});
  }
  return out;
}

std::string TailRule::label() const {
  switch (kind) {
    case Kind::Stationary: return "stationary";
    case Kind::Construction: return "construction";
    case Kind::ConstantLambda: return "constant-lambda";
  }
  return "unknown";
}

MeasureSpec::MeasureSpec(BlockSchedule schedule, TailRule tail)
    : schedule_(std::move(schedule)), tail_(tail), base_(golden_stationary()), cache_(std::make_shared<Cache>()) {}

ProbVector MeasureSpec::marginal(const BigInt& n) const {
  if (n <= 1) return base_;
  // Marginals at block boundaries are memoised; values are deterministic.
  RowVecD pi = base_.row();
  BigInt at = 1;
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->at.upper_bound(n);
    if (it != cache_->at.begin()) {
      --it;
      at = it->first;
      pi = it->second;
    }
  }
  for (const auto& seg : schedule_.segments(at, n)) {
    pi = propagate<double>(pi, schedule_.matrix(seg.level).matrix(), seg.end - seg.begin);
    if (seg.end != n) {
      std::lock_guard<std::mutex> lock(cache_->mu);
      cache_->at.emplace(seg.end, pi);
    }
  }
  // Re-normalise the accumulated round-off of long products.
  for (Eigen::Index i = 0; i < pi.size(); ++i) pi(i) = std::max(pi(i), 0.0);
  pi /= pi.sum();
  return ProbVector(pi);
}

double cylinder_log_measure(const MeasureSpec& spec, const Word& w) {
  if (w.symbols.empty()) throw InputError("cylinder word must be non-empty");
  const auto& sched = spec.schedule();
  for (State s : w.symbols)
    if (s >= 3) throw InputError("state out of range for the golden alphabet");
  double lp = spec.marginal(w.start).log(w.symbols[0]);
  if (std::isinf(lp)) return lp;
  const BigInt end = w.last();
  for (const auto& seg : sched.segments(w.start, end)) {
    const auto& P = sched.matrix(seg.level);
    const std::size_t i0 = static_cast<std::size_t>(seg.begin - w.start);
    const std::size_t i1 = static_cast<std::size_t>(seg.end - w.start);
    for (std::size_t i = i0; i < i1; ++i) {
      const double v = P(w.symbols[i], w.symbols[i + 1]);
      if (v == 0) return -std::numeric_limits<double>::infinity();
      lp += std::log(v);
    }
  }
  return lp;
}

double cylinder_measure(const MeasureSpec& spec, const Word& w) { return std::exp(cylinder_log_measure(spec, w)); }

MatD transition_product(const BlockSchedule& schedule, const BigInt& a, const BigInt& b) {
  MatD r = MatD::Identity(3, 3);
  for (const auto& seg : schedule.segments(a, b))
    r = (r * matrix_power<double>(schedule.matrix(seg.level).matrix(), seg.end - seg.begin)).eval();
  return r;
}

namespace {

struct RowSampler {
  int fixed = -1;  // deterministic successor, or -1
  double cum[8] = {};
  std::size_t n = 0;

  State draw(Rng& rng) const {
    if (fixed >= 0) return static_cast<State>(fixed);
    const double u = rng.uniform();
    for (std::size_t t = 0; t + 1 < n; ++t)
      if (u < cum[t]) return static_cast<State>(t);
    return static_cast<State>(n - 1);
  }
};

RowSampler make_row(const double* p, std::size_t n) {
  RowSampler r;
  r.n = n;
  int support = 0, last = -1;
  double acc = 0;
  for (std::size_t t = 0; t < n; ++t) {
    acc += p[t];
    r.cum[t] = acc;
    if (p[t] > 0) {
      ++support;
      last = static_cast<int>(t);
    }
  }
  if (support == 1) r.fixed = last;
  // Ensure zero-probability trailing states are never drawn.
  for (std::size_t t = static_cast<std::size_t>(last); t < n; ++t) r.cum[t] = 2.0;
  return r;
}

}  // namespace

void extend_window(const MeasureSpec& spec, Word& w, const BigInt& l, Rng& rng, std::size_t cap) {
  if (w.symbols.empty()) throw InputError("extend_window: empty word");
  const BigInt cur = w.last();
  if (l <= cur) return;
  if (l - w.start + 1 > cap) throw CapExceeded("sample window exceeds cap", (l - w.start + 1).str());
  const auto& sched = spec.schedule();
  w.symbols.reserve(static_cast<std::size_t>(l - w.start + 1));
  for (const auto& seg : sched.segments(cur, l)) {
    const MatD& P = sched.matrix(seg.level).matrix();
    RowSampler rows[3];
    for (int s = 0; s < 3; ++s) {
      RowVecD r = P.row(s);
      rows[s] = make_row(r.data(), 3);
    }
    const std::size_t steps = static_cast<std::size_t>(seg.end - seg.begin);
    for (std::size_t i = 0; i < steps; ++i) w.symbols.push_back(rows[w.symbols.back()].draw(rng));
  }
}

Word sample_window(const MeasureSpec& spec, const BigInt& k, const BigInt& l, std::uint64_t seed,
                   std::size_t cap) {
  if (l < k) throw InputError("sample_window: empty range");
  if (l - k + 1 > cap) throw CapExceeded("sample window exceeds cap", (l - k + 1).str());
  Rng rng(seed);
  const ProbVector pi = spec.marginal(k);
  const RowSampler first = make_row(pi.values().data(), pi.size());
  Word w;
  w.start = k;
  w.symbols.push_back(first.draw(rng));
  extend_window(spec, w, l, rng, cap);
  return w;
}

}  // namespace goldshift
