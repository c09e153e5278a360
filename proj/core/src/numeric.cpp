#include "goldshift/numeric.hpp"

#include "goldshift/errors.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace goldshift {

unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 2;
}

PrecisionGuard::PrecisionGuard(unsigned bits) : saved_digits10_(Real::default_precision()) {
  Real::default_precision(bits_to_digits10(bits));
}

PrecisionGuard::~PrecisionGuard() { Real::default_precision(saved_digits10_); }

unsigned current_precision_bits() {
  return static_cast<unsigned>(std::floor((Real::default_precision() - 2) / 0.30102999566398120));
}

Real phi_real() { return (Real(1) + boost::multiprecision::sqrt(Real(5))) / 2; }

Real real_from(const BigInt& v) { return Real(v); }

BigInt ceil_to_int(const Real& x) {
  if (!boost::multiprecision::isfinite(x)) throw InputError("ceil_to_int: non-finite value");
  Real c = boost::multiprecision::ceil(x);
  return c.convert_to<BigInt>();
}

std::size_t bit_length(const BigInt& v) {
  if (v == 0) return 0;
  BigInt a = abs(v);
  return boost::multiprecision::msb(a) + 1;
}

std::string to_decimal(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string to_decimal(const BigInt& v) { return v.str(); }

std::string to_decimal(const Real& v) {
  if (boost::multiprecision::isnan(v)) return "nan";
  if (boost::multiprecision::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v.str(0, std::ios_base::scientific);
}

BigInt parse_bigint(const std::string& s) {
  if (s.empty()) throw InputError("empty integer string");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw InputError("malformed integer: " + s);
  for (std::size_t k = i; k < s.size(); ++k)
    if (s[k] < '0' || s[k] > '9') throw InputError("malformed integer: " + s);
  return BigInt(s);
}

double to_double(const BigInt& v) { return v.convert_to<double>(); }

}  // namespace goldshift
