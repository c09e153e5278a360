#include "goldshift/tms.hpp"

#include "goldshift/errors.hpp"

#include <algorithm>

namespace goldshift {

AdjacencyMatrix::AdjacencyMatrix(std::vector<std::vector<int>> rows) : rows_(std::move(rows)) {
  const std::size_t n = rows_.size();
  if (n == 0) throw InputError("adjacency matrix must be non-empty");
  if (n > 255) throw InputError("at most 255 states supported");
  std::vector<bool> col_hit(n, false);
  for (const auto& r : rows_) {
    if (r.size() != n) throw InputError("adjacency matrix must be square");
    bool row_hit = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (r[j] != 0 && r[j] != 1) throw InputError("adjacency entries must be 0 or 1");
      if (r[j]) row_hit = col_hit[j] = true;
    }
    if (!row_hit) throw InputError("adjacency matrix has a row without successors");
  }
  if (std::find(col_hit.begin(), col_hit.end(), false) != col_hit.end())
    throw InputError("adjacency matrix has a column without predecessors");
}

AdjacencyMatrix AdjacencyMatrix::golden() { return AdjacencyMatrix({{1, 0, 1}, {1, 0, 1}, {0, 1, 0}}); }

AdjacencyMatrix AdjacencyMatrix::full(std::size_t n) {
  return AdjacencyMatrix(std::vector<std::vector<int>>(n, std::vector<int>(n, 1)));
}

Word Word::parse(std::string_view digits, BigInt start) {
  if (digits.empty()) throw InputError("word must have at least one symbol");
  Word w;
  w.start = std::move(start);
  w.symbols.reserve(digits.size());
  for (char ch : digits) {
    if (ch < '1' || ch > '9') throw InputError(std::string("invalid state symbol '") + ch + "'");
    w.symbols.push_back(static_cast<State>(ch - '1'));
  }
  return w;
}

std::string Word::str() const {
  std::string s;
  s.reserve(symbols.size());
  for (State x : symbols) s.push_back(static_cast<char>('1' + x));
  return s;
}

State Word::at(const BigInt& k) const {
  if (k < start || k > last()) throw InputError("coordinate " + k.str() + " outside word coverage");
  return symbols[static_cast<std::size_t>(k - start)];
}

bool is_admissible(const Word& w, const AdjacencyMatrix& adj) {
  for (State s : w.symbols)
    if (s >= adj.size()) throw InputError("state " + std::to_string(int(s) + 1) + " out of range");
  for (std::size_t i = 0; i + 1 < w.symbols.size(); ++i)
    if (!adj.allowed(w.symbols[i], w.symbols[i + 1])) return false;
  return true;
}

namespace {

using BoolMat = std::vector<std::vector<bool>>;

BoolMat bool_mul(const BoolMat& a, const BoolMat& b) {
  const std::size_t n = a.size();
  BoolMat r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (b[k][j]) r[i][j] = true;
  return r;
}

}  // namespace

std::optional<int> mixing_index(const AdjacencyMatrix& adj, int cap) {
  const std::size_t n = adj.size();
  BoolMat a(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = adj.rows()[i][j] != 0;
  BoolMat p = a;
  for (int k = 1; k <= cap; ++k) {
    bool positive = true;
    for (const auto& r : p)
      if (std::find(r.begin(), r.end(), false) != r.end()) positive = false;
    if (positive) return k;
    p = bool_mul(p, a);
  }
  return std::nullopt;
}

BigInt count_admissible(const AdjacencyMatrix& adj, std::size_t length, std::optional<State> first,
                        std::optional<State> last) {
  if (length == 0) throw InputError("length must be positive");
  const std::size_t n = adj.size();
  if ((first && *first >= n) || (last && *last >= n)) throw InputError("endpoint state out of range");
  std::vector<BigInt> ways(n, 0);
  for (std::size_t s = 0; s < n; ++s)
    if (!first || *first == s) ways[s] = 1;
  for (std::size_t step = 1; step < length; ++step) {
    std::vector<BigInt> next(n, 0);
    for (std::size_t s = 0; s < n; ++s)
      if (ways[s] != 0)
        for (std::size_t t = 0; t < n; ++t)
          if (adj.allowed(State(s), State(t))) next[t] += ways[s];
    ways = std::move(next);
  }
  BigInt total = 0;
  for (std::size_t s = 0; s < n; ++s)
    if (!last || *last == s) total += ways[s];
  return total;
}

std::vector<Word> enumerate_admissible(const AdjacencyMatrix& adj, std::size_t length,
                                       std::optional<State> first, std::optional<State> last,
                                       std::size_t cap) {
  BigInt count = count_admissible(adj, length, first, last);
  if (count > cap)
    throw CapExceeded("enumeration of " + count.str() + " words exceeds cap " + std::to_string(cap),
                      count.str());
  const std::size_t n = adj.size();
  // reach[r][s]: a path of r more steps from s can end in an allowed last state.
  std::vector<std::vector<bool>> reach(length, std::vector<bool>(n, false));
  for (std::size_t s = 0; s < n; ++s) reach[0][s] = !last || *last == s;
  for (std::size_t r = 1; r < length; ++r)
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n && !reach[r][s]; ++t)
        if (adj.allowed(State(s), State(t)) && reach[r - 1][t]) reach[r][s] = true;

  std::vector<Word> out;
  out.reserve(count.convert_to<std::size_t>());
  std::vector<State> cur;
  cur.reserve(length);
  auto rec = [&](auto&& self) -> void {
    const std::size_t pos = cur.size();
    if (pos == length) {
      out.push_back(Word{cur, 0});
      return;
    }
    for (std::size_t t = 0; t < n; ++t) {
      if (pos == 0 && first && *first != t) continue;
      if (pos > 0 && !adj.allowed(cur.back(), State(t))) continue;
      if (!reach[length - 1 - pos][t]) continue;
      cur.push_back(State(t));
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return out;
}

BridgeResult bridge_concat(const Word& left, const Word& right, const AdjacencyMatrix& adj) {
  if (left.symbols.empty() || right.symbols.empty()) throw InputError("bridge_concat: empty word");
  if (!is_admissible(left, adj) || !is_admissible(right, adj))
    throw InputError("bridge_concat: inputs must be admissible");
  const std::size_t n = adj.size();
  const std::size_t len = left.size();
  const std::size_t tail = std::min<std::size_t>(2, len);
  const std::size_t base = len - tail;

  std::optional<BridgeResult> best;
  std::vector<State> suffix(tail, 0);
  // Odometer over all suffixes in lexicographic order.
  for (;;) {
    Word cand = left;
    for (std::size_t i = 0; i < tail; ++i) cand.symbols[base + i] = suffix[i];
    bool ok = adj.allowed(cand.symbols.back(), right.symbols.front());
    for (std::size_t i = base == 0 ? 0 : base - 1; ok && i + 1 < len; ++i)
      ok = adj.allowed(cand.symbols[i], cand.symbols[i + 1]);
    if (ok) {
      int changed = 0;
      for (std::size_t i = 0; i < tail; ++i) changed += suffix[i] != left.symbols[base + i];
      if (!best || changed < best->changed) best = BridgeResult{std::move(cand), changed};
    }
    std::size_t i = tail;
    while (i > 0 && ++suffix[i - 1] == n) suffix[--i] = 0;
    if (i == 0) break;
  }
  if (!best) throw InputError("bridge_concat: no admissible rewrite of the last two symbols");
  return *best;
}

}  // namespace goldshift
