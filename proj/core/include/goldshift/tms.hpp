#pragma once

#include "goldshift/numeric.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace goldshift {

// States are 0-based internally and printed 1-based.
using State = std::uint8_t;

class AdjacencyMatrix {
 public:
  // Rows of 0/1 entries; every row and column needs a 1.
  explicit AdjacencyMatrix(std::vector<std::vector<int>> rows);

  // ((1,0,1),(1,0,1),(0,1,0)), the coding of the golden toral automorphism.
  static AdjacencyMatrix golden();
  static AdjacencyMatrix full(std::size_t n);

  std::size_t size() const { return rows_.size(); }
  bool allowed(State s, State t) const { return rows_[s][t] != 0; }
  const std::vector<std::vector<int>>& rows() const { return rows_; }

  friend bool operator==(const AdjacencyMatrix&, const AdjacencyMatrix&) = default;

 private:
  std::vector<std::vector<int>> rows_;
};

// A finite word placed at absolute coordinates [start, start + size).
// A placed word is exactly the data of a cylinder set.
struct Word {
  std::vector<State> symbols;
  BigInt start = 0;

  // Digits are 1-based state labels, e.g. "132".
  static Word parse(std::string_view digits, BigInt start = 0);
  std::string str() const;

  std::size_t size() const { return symbols.size(); }
  BigInt first() const { return start; }
  BigInt last() const { return start + BigInt(symbols.size()) - 1; }
  bool covers(const BigInt& a, const BigInt& b) const { return a >= start && b <= last(); }
  State at(const BigInt& k) const;

  friend bool operator==(const Word&, const Word&) = default;
};

using Cylinder = Word;

bool is_admissible(const Word& w, const AdjacencyMatrix& adj);

// Smallest n with adj^n entrywise positive, searched up to cap.
std::optional<int> mixing_index(const AdjacencyMatrix& adj, int cap = 64);

inline constexpr std::size_t kEnumerationCap = 1'000'000;

BigInt count_admissible(const AdjacencyMatrix& adj, std::size_t length,
                        std::optional<State> first = std::nullopt,
                        std::optional<State> last = std::nullopt);

// Lexicographic list of admissible words; throws CapExceeded above cap.
std::vector<Word> enumerate_admissible(const AdjacencyMatrix& adj, std::size_t length,
                                       std::optional<State> first = std::nullopt,
                                       std::optional<State> last = std::nullopt,
                                       std::size_t cap = kEnumerationCap);

struct BridgeResult {
  Word word;
  int changed = 0;
};

// Rewrites at most the last two symbols of left so that left.right is admissible.
// Fewest changes win, ties go to the lexicographically smallest suffix.
BridgeResult bridge_concat(const Word& left, const Word& right, const AdjacencyMatrix& adj);

}  // namespace goldshift
