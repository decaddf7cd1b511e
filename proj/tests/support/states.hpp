#pragma once

#include <cmath>

#include "qcorr/qstate.hpp"

namespace fixture {

using namespace qcorr;

inline Vector ket(std::initializer_list<double> re) {
  Vector v(static_cast<Eigen::Index>(re.size()));
  Eigen::Index i = 0;
  for (double x : re) v(i++) = x;
  return v;
}

inline Vector bell_vector() {
  const double h = 1.0 / std::sqrt(2.0);
  return ket({h, 0, 0, h});
}

inline Vector ghz3_vector() {
  Vector v = Vector::Zero(8);
  v(0) = v(7) = 1.0 / std::sqrt(2.0);
  return v;
}

inline Vector w3_vector() {
  Vector v = Vector::Zero(8);
  v(1) = v(2) = v(4) = 1.0 / std::sqrt(3.0);
  return v;
}

inline DensityMatrix pure(const Vector& v, Dims dims) { return PureStateVector::validate(v, std::move(dims)).projector(); }

inline DensityMatrix bell() { return pure(bell_vector(), {2, 2}); }
inline DensityMatrix ghz3() { return pure(ghz3_vector(), {2, 2, 2}); }
inline DensityMatrix w3() { return pure(w3_vector(), {2, 2, 2}); }

inline DensityMatrix diag(std::initializer_list<double> entries, Dims dims) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(entries.size()), static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (double x : entries) {
    m(i, i) = x;
    ++i;
  }
  return DensityMatrix::validate(m, std::move(dims));
}

inline DensityMatrix bell_times_zero() { return tensor(bell(), diag({1, 0}, {2})); }

inline DensityMatrix maximally_mixed(Dims dims) {
  const int d = total_dim(dims);
  return DensityMatrix::validate(Matrix::Identity(d, d) / double(d), std::move(dims));
}

inline double frob(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

}  // namespace fixture
