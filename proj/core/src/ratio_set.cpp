#include "goldshift/ratio_set.hpp"

#include "goldshift/errors.hpp"
#include "goldshift/linalg.hpp"
#include "goldshift/measure.hpp"
#include "goldshift/rng.hpp"
#include "goldshift/witness.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>
#include <unordered_map>

namespace goldshift {

namespace {

using Cum = std::array<std::array<double, 3>, 3>;

Cum cumulative(const MatD& m) {
  Cum c{};
  for (int i = 0; i < 3; ++i) {
    double acc = 0;
    for (int j = 0; j < 3; ++j) c[i][j] = acc += m(i, j);
    c[i][2] = 2.0;  // absorb rounding; the last column always closes the row
  }
  return c;
}

State draw(const Cum& c, State from, Rng& rng) {
  const auto& row = c[from];
  // Skip the draw on deterministic rows.
  if (row[0] >= 1.0 - 1e-15) return 0;
  if (row[0] <= 0 && row[1] >= 1.0 - 1e-15) return 1;
  if (row[1] <= 0) return 2;
  const double u = rng.uniform();
  return u < row[0] ? 0 : (u < row[1] ? 1 : 2);
}

double log_one_factor(double lambda) { return std::log((1 + kPhi) / (1 + kPhi * lambda)); }

constexpr long long kMaxWindow = 10'000'000;

struct Setup {
  int t = 0;
  long long a = 0, e = 0;        // B occupies [a, e]
  long long base_end = 0;        // base window [a, base_end]
  long long unit = 1;
  std::uint64_t shifts = 0;
  std::vector<State> b;
  std::vector<long long> blk_lo, blk_hi;  // level blocks [lo, hi)
  std::vector<double> cl, cv;            // log factors per one and per 11-pair
  std::vector<const Cum*> base_rows;      // matrix for positions a..base_end-1
  std::vector<Cum> level_cum;
  Cum q_cum{};
  MatD q;
  double log_target = 0;
  double eps = 0;
};

struct TaskResult {
  std::uint64_t hits = 0;
  std::vector<std::uint64_t> first_hit;
};

class PathSampler {
 public:
  PathSampler(const Setup& s, Rng& rng) : s_(s), rng_(rng) {}

  void reset() {
    start_ = s_.a;
    buf_.assign(s_.b.begin(), s_.b.end());
    while (pos() < s_.base_end) buf_.push_back(draw(*s_.base_rows[static_cast<std::size_t>(pos() - s_.a)], buf_.back(), rng_));
  }

  long long pos() const { return start_ + static_cast<long long>(buf_.size()) - 1; }

  State at(long long p) const { return buf_[static_cast<std::size_t>(p - start_)]; }

  // Samples forward to position p; everything beyond the base window is Q.
  void ensure(long long p) {
    while (pos() < p) buf_.push_back(draw(s_.q_cum, buf_.back(), rng_));
  }

  // Moves to p without keeping the positions before it.
  void seek(long long p) {
    if (p <= pos() + 1) {
      ensure(p);
      return;
    }
    const long long gap = p - pos();
    const State s = draw(jump(gap), buf_.back(), rng_);
    start_ = p;
    buf_.assign(1, s);
  }

 private:
  const Cum& jump(long long gap) {
    auto it = jumps_.find(gap);
    if (it == jumps_.end()) it = jumps_.emplace(gap, cumulative(matrix_power(s_.q, BigInt(gap)))).first;
    return it->second;
  }

  const Setup& s_;
  Rng& rng_;
  long long start_ = 0;
  std::vector<State> buf_;
  std::unordered_map<long long, Cum> jumps_;
};

void count_block(const PathSampler& ps, long long lo, long long hi, long long& L, long long& V) {
  L = V = 0;
  for (long long i = lo; i < hi; ++i) {
    const bool one = ps.at(i) == 0;
    L += one;
    V += one && ps.at(i + 1) == 0;
  }
}

TaskResult run_task(const Setup& s, std::uint64_t seed, std::uint64_t task, std::uint64_t count) {
  TaskResult r;
  r.first_hit.assign(s.shifts, 0);
  Rng rng(derive_seed(seed, task));
  PathSampler ps(s, rng);
  const std::size_t nl = static_cast<std::size_t>(s.t);
  std::vector<long long> L0(nl), V0(nl);
  for (std::uint64_t i = 0; i < count; ++i) {
    ps.reset();
    for (std::size_t k = 0; k < nl; ++k) count_block(ps, s.blk_lo[k], s.blk_hi[k], L0[k], V0[k]);
    for (std::uint64_t l = 1; l <= s.shifts; ++l) {
      const long long sh = static_cast<long long>(l) * s.unit;
      bool in_b = true;
      for (long long p = s.a; p <= s.e && in_b; ++p) {
        if (p == s.a)
          ps.seek(sh + p);
        else
          ps.ensure(sh + p);
        in_b = ps.at(sh + p) == s.b[static_cast<std::size_t>(p - s.a)];
      }
      if (!in_b) continue;
      double log_rn = 0;
      if (nl > 0) {
        ps.ensure(sh + s.base_end);
        for (std::size_t k = 0; k < nl; ++k) {
          long long L, V;
          count_block(ps, s.blk_lo[k] + sh, s.blk_hi[k] + sh, L, V);
          log_rn += static_cast<double>(L - L0[k]) * s.cl[k] + static_cast<double>(V - V0[k]) * s.cv[k];
        }
      }
      if (std::abs(std::expm1(log_rn - s.log_target)) <= s.eps) {
        ++r.hits;
        ++r.first_hit[l - 1];
        break;
      }
    }
  }
  return r;
}

}  // namespace

ClopperPearson clopper_pearson(std::uint64_t hits, std::uint64_t n, double confidence) {
  if (hits > n) throw InputError("clopper-pearson: more hits than trials");
  if (!(confidence > 0 && confidence < 1)) throw InputError("clopper-pearson: confidence must lie in (0, 1)");
  if (n == 0) return {0, 1};
  const double alpha = 1 - confidence;
  const double h = static_cast<double>(hits), m = static_cast<double>(n);
  ClopperPearson ci;
  ci.low = hits == 0 ? 0.0 : boost::math::ibeta_inv(h, m - h + 1, alpha / 2);
  ci.high = hits == n ? 1.0 : boost::math::ibeta_inv(h + 1, m - h, 1 - alpha / 2);
  return ci;
}

std::string RatioSetReport::verdict() const {
  if (hits == 0) return "inconclusive";
  return ci_low > 0 ? "positive evidence" : "inconclusive";
}

RatioSetReport ratio_set_experiment(const Construction& c, const Word& B, const RatioSetConfig& cfg) {
  const int levels = static_cast<int>(c.levels.size());
  const int t = cfg.t == 0 ? levels : cfg.t;
  if (t < 0 || t > levels) throw InputError("ratio-set: truncation level out of range");
  if (t == 0 && levels > 0) throw InputError("ratio-set: t = 0 only for the stationary measure");
  if (cfg.j < 0 || cfg.j > std::max(t, 0)) throw InputError("ratio-set: need 0 <= j <= t");
  if (!(cfg.eps > 0)) throw InputError("ratio-set: eps must be positive");
  if (cfg.samples == 0 || cfg.chunk == 0 || cfg.max_shifts == 0) throw InputError("ratio-set: empty experiment");
  if (B.size() == 0 || B.first() > 1) throw InputError("ratio-set: B must start at or before coordinate 1");
  if (!is_admissible(B, AdjacencyMatrix::golden())) throw InputError("ratio-set: B is not admissible");
  if (B.first() < -BigInt(1'000'000) || B.last() > BigInt(kMaxWindow)) throw CapExceeded("ratio-set: B too wide", B.str());

  const auto& sched = c.spec.schedule();
  Setup s;
  s.t = t;
  s.a = static_cast<long long>(B.first());
  s.e = static_cast<long long>(B.last());
  s.b = B.symbols;
  s.eps = cfg.eps;
  s.q = golden_matrix().matrix();
  s.q_cum = cumulative(s.q);

  RatioSetReport r;
  r.j = cfg.j;
  r.t = t;
  r.eps = cfg.eps;
  r.confidence = cfg.confidence;
  BigInt unit = 1, shifts = cfg.max_shifts, Nt = 0;
  if (t >= 1) {
    const auto& Lt = c.levels[static_cast<std::size_t>(t - 1)];
    Nt = Lt.N;
    if (Nt > BigInt(kMaxWindow)) throw CapExceeded("ratio-set: level block beyond the sampling window cap", Nt.str());
    unit = 4 * Lt.k_mix;
    if (Lt.m) shifts = std::min(shifts, (*Lt.m - 1) / unit);
    if (unit * shifts > BigInt(1) << 60) throw CapExceeded("ratio-set: shifts beyond 2^60", (unit * shifts).str());
    if (shifts < 1) throw InputError("ratio-set: m_t leaves no admissible shift");
  }
  if (cfg.j >= 1) s.log_target = (c.log_r / Real(c.levels[static_cast<std::size_t>(cfg.j - 1)].K)).convert_to<double>();
  s.unit = static_cast<long long>(unit);
  s.shifts = static_cast<std::uint64_t>(shifts);
  s.base_end = std::max(s.e, static_cast<long long>(Nt));
  if (levels > 0 && s.unit + s.a <= s.base_end) throw InputError("ratio-set: shifted windows overlap the perturbed blocks");

  for (int k = 1; k <= t; ++k) {
    const auto& lv = sched.levels()[static_cast<std::size_t>(k - 1)];
    s.blk_lo.push_back(static_cast<long long>(lv.M_prev));
    s.blk_hi.push_back(static_cast<long long>(lv.N));
    s.cl.push_back(log_one_factor(lv.lambda));
    s.cv.push_back(std::log(lv.lambda));
  }
  for (std::size_t l = 0; l <= sched.level_count(); ++l) s.level_cum.push_back(cumulative(sched.matrix(static_cast<int>(l)).matrix()));
  for (long long p = s.a; p < s.base_end; ++p) s.base_rows.push_back(&s.level_cum[static_cast<std::size_t>(sched.level_at(p))]);

  r.log_target = s.log_target;
  r.shift_unit = unit;
  r.shifts = s.shifts;
  r.samples = cfg.samples;
  r.mu_B = cylinder_measure(c.spec, B);

  const std::uint64_t tasks = (cfg.samples + cfg.chunk - 1) / cfg.chunk;
  std::vector<TaskResult> results(tasks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t k; (k = next.fetch_add(1)) < tasks;) {
      const std::uint64_t count = std::min(cfg.chunk, cfg.samples - k * cfg.chunk);
      results[k] = run_task(s, cfg.seed, k, count);
    }
  };
  const unsigned nthreads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(tasks)));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < nthreads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  r.first_hit.assign(s.shifts, 0);
  for (const auto& tr : results) {
    r.hits += tr.hits;
    for (std::size_t l = 0; l < tr.first_hit.size(); ++l) r.first_hit[l] += tr.first_hit[l];
  }
  const auto ci = clopper_pearson(r.hits, r.samples, cfg.confidence);
  r.estimate = r.mu_B * static_cast<double>(r.hits) / static_cast<double>(r.samples);
  r.ci_low = r.mu_B * ci.low;
  r.ci_high = r.mu_B * ci.high;
  return r;
}

WitnessMass witness_submass(const Construction& c, const Word& B, int j, int t, std::size_t prefix_cap) {
  const int levels = static_cast<int>(c.levels.size());
  if (t < 2 || t > levels || j < 1 || j >= t) throw InputError("witness mass: need 1 <= j < t <= levels");
  if (B.size() % 2 == 0 || B.start != -BigInt(B.size() / 2))
    throw InputError("witness mass: B must be a symmetric cylinder around 0");
  const auto& Lt = c.levels[static_cast<std::size_t>(t - 1)];
  const long long k = static_cast<long long>(B.size() / 2);
  const BigInt Mb = Lt.N - Lt.n;
  if (Mb <= k) throw InputError("witness mass: M_{t-1} must exceed the radius of B");
  if (Mb - k > BigInt(prefix_cap)) throw CapExceeded("witness mass: prefix enumeration beyond cap", Mb.str());
  if (Lt.n > BigInt(5000)) throw CapExceeded("witness mass: block DP beyond cap", Lt.n.str());
  const long long n = static_cast<long long>(Lt.n);
  const long long M = static_cast<long long>(Mb);
  const long long p = static_cast<long long>(Lt.p.at(j));
  const auto& sched = c.spec.schedule();
  WitnessMass out;
  out.shift = 4 * Lt.k_mix;
  if (Lt.m && out.shift >= *Lt.m) throw InputError("witness mass: first shift not below m_t");

  const MatD Q = golden_matrix().matrix();
  const MatD Qt = sched.matrix(t).matrix();
  const MatD G = transition_product(sched, Lt.N - 1, out.shift - k);
  const State b_first = B.symbols.front();

  // Block DP over (L, V, 23-pairs capped, last symbol) with L < n/2.
  const long long Lmax = (n - 1) / 2;
  const long long thr = (n + 14) / 15;
  const std::size_t S = static_cast<std::size_t>(Lmax + 1);
  const std::size_t P = static_cast<std::size_t>(thr + 1);
  auto idx = [&](long long L, long long V, long long pr, int st) {
    return ((static_cast<std::size_t>(L) * S + static_cast<std::size_t>(V)) * P + static_cast<std::size_t>(pr)) * 3 +
           static_cast<std::size_t>(st);
  };
  std::map<State, std::vector<double>> finals;
  auto block_dp = [&](State before) {
    std::vector<double> cur(S * S * P * 3, 0.0), nxt(cur.size());
    for (int u = 0; u < 3; ++u) {
      const double w = Q(before, u);
      if (w > 0 && (u != 0 || Lmax >= 1)) cur[idx(u == 0, 0, 0, u)] += w;
    }
    for (long long step = 1; step < n; ++step) {
      std::fill(nxt.begin(), nxt.end(), 0.0);
      for (long long L = 0; L <= std::min(Lmax, step); ++L)
        for (long long V = 0; V <= L; ++V)
          for (long long pr = 0; pr <= thr; ++pr)
            for (int st = 0; st < 3; ++st) {
              const double w = cur[idx(L, V, pr, st)];
              if (w == 0) continue;
              for (int u = 0; u < 3; ++u) {
                const double tr = Qt(st, u);
                if (tr == 0) continue;
                const long long L2 = L + (u == 0);
                if (L2 > Lmax) continue;
                const long long V2 = V + (st == 0 && u == 0);
                const long long p2 = std::min(thr, pr + (st == 1 && u == 2));
                nxt[idx(L2, V2, p2, u)] += w * tr;
              }
            }
      std::swap(cur, nxt);
    }
    return cur;
  };

  // Enumerate prefixes c[0, M) extending B.
  std::vector<std::vector<State>> prefixes;
  std::vector<State> cur(B.symbols.begin(), B.symbols.end());
  const auto adj = AdjacencyMatrix::golden();
  auto dfs = [&](auto&& self) -> void {
    if (static_cast<long long>(cur.size()) == k + M) {
      prefixes.push_back(cur);
      return;
    }
    for (State u = 0; u < 3; ++u)
      if (adj.allowed(cur.back(), u)) {
        cur.push_back(u);
        self(self);
        cur.pop_back();
      }
  };
  dfs(dfs);
  out.prefixes = prefixes.size();

  for (const auto& pre : prefixes) {
    Word head;
    head.start = -k;
    head.symbols = pre;
    const double mu_head = cylinder_measure(c.spec, head);
    double q_head = 1;
    for (std::size_t i = 0; i + 1 < pre.size(); ++i) q_head *= Q(pre[i], pre[i + 1]);
    const State before = pre.back();
    auto it = finals.find(before);
    if (it == finals.end()) it = finals.emplace(before, block_dp(before)).first;
    const auto& fin = it->second;
    for (long long L = 0; L <= Lmax; ++L) {
      if (4 * L <= n) continue;
      for (long long V = 0; V <= L; ++V)
        for (int st = 1; st < 3; ++st) {
          const double w = fin[idx(L, V, thr, st)];
          if (w == 0) continue;
          const auto blk = witness_block(before, L, V, p, n);
          if (!blk) {
            ++out.skipped;
            continue;
          }
          double q_blk = Q(before, (*blk)[0]);
          for (std::size_t i = 0; i + 1 < blk->size(); ++i) q_blk *= Q((*blk)[i], (*blk)[i + 1]);
          out.mass += mu_head * w * G(st, b_first) * q_head * q_blk;
        }
    }
  }
  return out;
}

}  // namespace goldshift
