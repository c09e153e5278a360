#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <string>

namespace goldshift {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                            boost::multiprecision::et_off>;
// Expression templates off: the types compose with Eigen and auto.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                          boost::multiprecision::et_off>;

inline constexpr unsigned kDefaultPrecisionBits = 256;
inline constexpr double kPhi = 1.6180339887498948482;
inline constexpr double kSqrt5 = 2.2360679774997896964;

unsigned bits_to_digits10(unsigned bits);

// Scoped default precision for mpfr_float. The setting is process global,
// so precision changes are confined to single-threaded code paths.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_digits10_;
};

unsigned current_precision_bits();

Real phi_real();
Real real_from(const BigInt& v);
// Smallest integer >= x. x must be finite.
BigInt ceil_to_int(const Real& x);
// Number of bits in |v| (0 for v == 0).
std::size_t bit_length(const BigInt& v);

// Shortest decimal string that round-trips through double.
std::string to_decimal(double v);
std::string to_decimal(const BigInt& v);
// Decimal string carrying the full working precision of v.
std::string to_decimal(const Real& v);
BigInt parse_bigint(const std::string& s);

double to_double(const BigInt& v);

}  // namespace goldshift
