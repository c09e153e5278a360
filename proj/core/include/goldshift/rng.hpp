#pragma once

#include <cstdint>
#include <random>

namespace goldshift {

// splitmix64 finaliser; decorrelates (seed, task) pairs into stream seeds.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t task);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  // Uniform on [0, 1) from the top 53 bits; identical on every platform.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  std::uint64_t next() { return eng_(); }
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 eng_;
};

}  // namespace goldshift
