#pragma once

#include <cmath>
#include <type_traits>
#include <utility>

#include <Eigen/Core>

#include "ewbench/jet.hpp"

namespace ewb {

inline double value_of(double x) { return x; }
inline double value_of(const Jet& x) { return x.value(); }

template <class Derived>
Eigen::Matrix<double, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime> values(
    const Eigen::MatrixBase<Derived>& m) {
  Eigen::Matrix<double, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime> out(m.rows(),
                                                                                   m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = value_of(m(i, j));
  }
  return out;
}

/// Gauss-Jordan inverse with partial pivoting on the leading value; works for
/// plain doubles and for jets, where it propagates derivatives exactly.
/// Returns {inverse, determinant}.  The caller decides what counts as singular.
template <class Scalar, int N>
std::pair<Eigen::Matrix<Scalar, N, N>, Scalar> inverse_and_det(Eigen::Matrix<Scalar, N, N> a) {
  Eigen::Matrix<Scalar, N, N> inv;
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) inv(i, j) = Scalar(i == j ? 1.0 : 0.0);
  }
  Scalar det(1.0);
  for (int col = 0; col < N; ++col) {
    int piv = col;
    for (int r = col + 1; r < N; ++r) {
      if (std::abs(value_of(a(r, col))) > std::abs(value_of(a(piv, col)))) piv = r;
    }
    if (piv != col) {
      a.row(piv).swap(a.row(col));
      inv.row(piv).swap(inv.row(col));
      det = -det;
    }
    const Scalar p = a(col, col);
    det = det * p;
    if (value_of(p) == 0.0) return {inv, Scalar(0.0)};
    const Scalar rp = Scalar(1.0) / p;
    for (int j = 0; j < N; ++j) {
      a(col, j) = a(col, j) * rp;
      inv(col, j) = inv(col, j) * rp;
    }
    for (int r = 0; r < N; ++r) {
      if (r == col) continue;
      const Scalar f = a(r, col);
      if (value_of(f) == 0.0 && std::is_same_v<Scalar, double>) continue;
      for (int j = 0; j < N; ++j) {
        a(r, j) = a(r, j) - f * a(col, j);
        inv(r, j) = inv(r, j) - f * inv(col, j);
      }
    }
  }
  return {inv, det};
}

}  // namespace ewb
