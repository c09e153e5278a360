#include "goldshift/witness.hpp"

#include "goldshift/errors.hpp"

#include <cmath>

namespace goldshift {

namespace {

constexpr State kOne = 0, kTwo = 1, kThree = 2;

const LevelParams& level_of(const std::vector<LevelParams>& levels, int t) {
  if (t < 1 || static_cast<std::size_t>(t) > levels.size())
    throw InputError("level " + std::to_string(t) + " not in construction");
  return levels[static_cast<std::size_t>(t - 1)];
}

struct InnerCounts {
  long long L = 0, V = 0, P23 = 0;
};

InnerCounts inner_counts(const std::vector<State>& s, std::size_t i0, std::size_t i1) {
  InnerCounts c;
  for (std::size_t i = i0; i < i1; ++i) {
    c.L += s[i] == kOne;
    if (i + 1 < i1) {
      c.V += s[i] == kOne && s[i + 1] == kOne;
      c.P23 += s[i] == kTwo && s[i + 1] == kThree;
    }
  }
  return c;
}

double log_one_factor(double lambda) { return std::log((1 + kPhi) / (1 + kPhi * lambda)); }

}  // namespace

GoodCylinderCheck good_cylinder(const Word& c, int t, const std::vector<LevelParams>& levels) {
  const auto& L = level_of(levels, t);
  const BigInt M = L.N - L.n;
  if (c.start != 0 || !c.covers(M, L.N - 1)) throw InputError("good_cylinder: c must start at 0 and cover [0, N_t)");
  if (L.n > BigInt(100'000'000)) throw CapExceeded("good_cylinder: block too long", L.n.str());
  const auto ic = inner_counts(c.symbols, static_cast<std::size_t>(M), static_cast<std::size_t>(L.N));
  GoodCylinderCheck g;
  g.n = static_cast<long long>(L.n);
  g.L = ic.L;
  g.V = ic.V;
  g.pairs23 = ic.P23;
  g.good = 4 * g.L > g.n && 2 * g.L < g.n && 15 * g.pairs23 >= g.n;
  return g;
}

std::optional<std::vector<State>> witness_block(State before, long long L, long long V, long long p, long long n) {
  if (L == V) return std::nullopt;  // needs at least one run of ones
  std::vector<State> out;
  out.reserve(static_cast<std::size_t>(n));
  if (before == kThree) out.push_back(kTwo);
  out.insert(out.end(), static_cast<std::size_t>(V + p + 1), kOne);
  for (long long i = 0; i < L - V - 1; ++i) out.insert(out.end(), {kThree, kTwo, kOne});
  if (static_cast<long long>(out.size()) > n) return std::nullopt;
  if (!out.empty() && out.back() == kOne && static_cast<long long>(out.size()) == n) return std::nullopt;
  State prev = out.empty() ? before : out.back();
  while (static_cast<long long>(out.size()) < n) {
    const State s = prev == kThree ? kTwo : kThree;
    out.push_back(s);
    prev = s;
  }
  return out;
}

Witness witness_word(const Word& b, const Word& c, int j, int t, const std::vector<LevelParams>& levels) {
  if (j < 1 || j >= t) throw InputError("witness: need 1 <= j < t");
  const auto& Lt = level_of(levels, t);
  if (b.size() % 2 == 0 || b.start != -BigInt(b.size() / 2))
    throw InputError("witness: b must be a symmetric cylinder around 0");
  const long long k = static_cast<long long>(b.size() / 2);
  const BigInt Mb = Lt.N - Lt.n;
  if (Mb <= k) throw InputError("witness: M_{t-1} must exceed the radius of b");
  const auto gc = good_cylinder(c, t, levels);
  if (!gc.good) throw InputError("witness: c is not a good cylinder");
  for (long long i = 0; i <= k; ++i)
    if (c.symbols[static_cast<std::size_t>(i)] != b.symbols[static_cast<std::size_t>(k + i)])
      throw InputError("witness: c does not agree with b on [0, k]");
  const auto pit = Lt.p.find(j);
  if (pit == Lt.p.end()) throw InputError("witness: missing p(j, t)");
  const BigInt p = pit->second;
  if (BigInt(20) * p > Lt.n) throw InputError("witness: p(j, t) exceeds n_t / 20");

  const std::size_t M = static_cast<std::size_t>(Mb);
  const long long n = static_cast<long long>(Lt.n);
  const State before = c.symbols[M - 1];
  auto block = witness_block(before, gc.L, gc.V, static_cast<long long>(p), n);
  if (!block) {
    if (gc.L == gc.V) throw ConstructionError("witness: block without runs of ones");
    throw ConstructionError("witness: block too short for the witness pattern");
  }

  Witness w;
  w.j = j;
  w.t = t;
  w.p = p;
  w.c_counts = gc;
  w.inserted = before == kThree;
  w.d.start = -k;
  w.d.symbols.assign(b.symbols.begin(), b.symbols.begin() + k);
  w.d.symbols.insert(w.d.symbols.end(), c.symbols.begin(), c.symbols.begin() + static_cast<std::ptrdiff_t>(M));
  w.d.symbols.insert(w.d.symbols.end(), block->begin(), block->end());
  if (!is_admissible(w.d, AdjacencyMatrix::golden())) throw ConstructionError("witness: result not admissible");

  const auto dc = inner_counts(w.d.symbols, static_cast<std::size_t>(k) + M, w.d.symbols.size());
  w.d_counts = BlockCounts{t, dc.L, dc.V};
  if (dc.L - gc.L != static_cast<long long>(p) || dc.V - gc.V != static_cast<long long>(p))
    throw ConstructionError("witness: count shift differs from p");
  w.log_rn = static_cast<double>(p) * (log_one_factor(Lt.lambda_d) + std::log(Lt.lambda_d));
  return w;
}

MarkerResult marker_variant(const Witness& w, const Word& right, const std::vector<LevelParams>& levels) {
  const auto& Lt = level_of(levels, w.t);
  const auto br = bridge_concat(w.d, right, AdjacencyMatrix::golden());
  MarkerResult m;
  m.changed = br.changed;
  m.d = br.word;
  const std::size_t i0 = static_cast<std::size_t>(Lt.N - Lt.n - w.d.start);
  const auto before = inner_counts(w.d.symbols, i0, w.d.size());
  const auto after = inner_counts(m.d.symbols, i0, m.d.size());
  m.dL = after.L - before.L;
  m.dV = after.V - before.V;
  m.log_factor_change =
      static_cast<double>(m.dL) * log_one_factor(Lt.lambda_d) + static_cast<double>(m.dV) * std::log(Lt.lambda_d);
  m.bound = 4 * std::log(Lt.lambda_d);
  return m;
}

}  // namespace goldshift
