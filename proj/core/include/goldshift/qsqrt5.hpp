#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <string>

namespace goldshift {

using Rational = boost::multiprecision::cpp_rational;

// Exact element a + b*sqrt(5) of the field Q(sqrt 5).
class QSqrt5 {
 public:
  QSqrt5() = default;
  QSqrt5(Rational a, Rational b = 0) : a_(std::move(a)), b_(std::move(b)) {}
  QSqrt5(int a) : a_(a) {}

  static QSqrt5 sqrt5() { return {0, 1}; }
  static QSqrt5 phi() { return {Rational(1, 2), Rational(1, 2)}; }

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt5_part() const { return b_; }

  QSqrt5 conjugate() const { return {a_, -b_}; }
  // a^2 - 5 b^2
  Rational norm() const { return a_ * a_ - 5 * b_ * b_; }
  int sign() const;
  double to_double() const;
  std::string str() const;

  friend QSqrt5 operator+(const QSqrt5& x, const QSqrt5& y) { return {x.a_ + y.a_, x.b_ + y.b_}; }
  friend QSqrt5 operator-(const QSqrt5& x, const QSqrt5& y) { return {x.a_ - y.a_, x.b_ - y.b_}; }
  friend QSqrt5 operator-(const QSqrt5& x) { return {-x.a_, -x.b_}; }
  friend QSqrt5 operator*(const QSqrt5& x, const QSqrt5& y) {
    return {x.a_ * y.a_ + 5 * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_};
  }
  friend QSqrt5 operator/(const QSqrt5& x, const QSqrt5& y);
  QSqrt5& operator+=(const QSqrt5& y) { return *this = *this + y; }
  QSqrt5& operator-=(const QSqrt5& y) { return *this = *this - y; }
  QSqrt5& operator*=(const QSqrt5& y) { return *this = *this * y; }
  QSqrt5& operator/=(const QSqrt5& y) { return *this = *this / y; }

  friend bool operator==(const QSqrt5& x, const QSqrt5& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend std::strong_ordering operator<=>(const QSqrt5& x, const QSqrt5& y) {
    int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  Rational a_ = 0, b_ = 0;
};

inline QSqrt5 min(const QSqrt5& x, const QSqrt5& y) { return y < x ? y : x; }
inline QSqrt5 max(const QSqrt5& x, const QSqrt5& y) { return x < y ? y : x; }

}  // namespace goldshift
