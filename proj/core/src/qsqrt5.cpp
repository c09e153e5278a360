#include "goldshift/qsqrt5.hpp"

#include "goldshift/errors.hpp"

#include <cmath>

namespace goldshift {

int QSqrt5::sign() const {
  const int sa = a_.sign(), sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 with 5 b^2.
  Rational d = a_ * a_ - 5 * b_ * b_;
  if (d == 0) return 0;  // unreachable for rational a, b != 0
  return d > 0 ? sa : sb;
}

double QSqrt5::to_double() const {
  // Evaluate through the conjugate when cancellation would hurt.
  const double a = a_.convert_to<double>(), b = b_.convert_to<double>();
  const double direct = a + b * std::sqrt(5.0);
  if (a_.sign() * b_.sign() < 0 && std::abs(direct) < 1e-3 * std::abs(a)) {
    const double n = norm().convert_to<double>();
    return n / (a - b * std::sqrt(5.0));
  }
  return direct;
}

std::string QSqrt5::str() const { return a_.str() + " + " + b_.str() + "*sqrt5"; }

QSqrt5 operator/(const QSqrt5& x, const QSqrt5& y) {
  Rational n = y.norm();
  if (n == 0) throw InputError("division by zero in Q(sqrt5)");
  QSqrt5 num = x * y.conjugate();
  return {num.rational_part() / n, num.sqrt5_part() / n};
}

}  // namespace goldshift
