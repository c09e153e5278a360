#pragma once

#include "goldshift/errors.hpp"
#include "goldshift/numeric.hpp"

#include <Eigen/Dense>

#include <limits>

namespace Eigen {
template <>
struct NumTraits<goldshift::Real> : GenericNumTraits<goldshift::Real> {
  using Real = goldshift::Real;
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 4
  };
  static Real epsilon() { return std::numeric_limits<Real>::epsilon(); }
  static Real dummy_precision() { return epsilon() * 1024; }
  static Real highest() { return std::numeric_limits<Real>::max(); }
  static Real lowest() { return -std::numeric_limits<Real>::max(); }
  static int digits10() { return static_cast<int>(Real::default_precision()); }
};
}  // namespace Eigen

namespace goldshift {

template <class T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using RowVec = Eigen::Matrix<T, 1, Eigen::Dynamic>;

using MatD = Mat<double>;
using MatR = Mat<Real>;
using RowVecD = RowVec<double>;
using RowVecR = RowVec<Real>;

template <class T>
void normalise_rows(Mat<T>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) m.row(i) /= m.row(i).sum();
}

// m^e for a stochastic m by binary exponentiation; e may be astronomically
// large. Rows are renormalised after every product, otherwise rounding in the
// unit eigenvalue compounds over the squarings and the power blows up.
template <class T>
Mat<T> matrix_power(Mat<T> m, BigInt e) {
  if (e < 0) throw InputError("negative matrix exponent");
  Mat<T> r = Mat<T>::Identity(m.rows(), m.cols());
  while (e > 0) {
    if ((e & 1) != 0) {
      r = (r * m).eval();
      normalise_rows(r);
    }
    e >>= 1;
    if (e > 0) {
      m = (m * m).eval();
      normalise_rows(m);
    }
  }
  return r;
}

// v * m^e, stepping directly when e is small.
template <class T>
RowVec<T> propagate(RowVec<T> v, const Mat<T>& m, const BigInt& e) {
  if (e <= 64) {
    const int steps = e.convert_to<int>();
    for (int k = 0; k < steps; ++k) v = (v * m).eval();
    return v;
  }
  return v * matrix_power(m, e);
}

// Stationary row vector: one equation of (P^T - I) pi = 0 replaced by sum(pi) = 1.
template <class T>
RowVec<T> stationary_solve(const Mat<T>& p) {
  const auto n = p.rows();
  Mat<T> a = p.transpose() - Mat<T>::Identity(n, n);
  a.row(n - 1).setConstant(T(1));
  Eigen::Matrix<T, Eigen::Dynamic, 1> b = Eigen::Matrix<T, Eigen::Dynamic, 1>::Zero(n);
  b(n - 1) = T(1);
  auto lu = a.fullPivLu();
  if (!lu.isInvertible()) throw InputError("stationary system is singular");
  return lu.solve(b).transpose();
}

}  // namespace goldshift
