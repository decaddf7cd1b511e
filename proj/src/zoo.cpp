#include "qcorr/zoo.hpp"

#include <cmath>
#include <numbers>

namespace qcorr {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

int party_count(const ZooParams& params, int fallback) {
  const int n = params.n.value_or(fallback);
  if (n < 2 || n > 12) throw Error(ErrorCode::BadParams, "n must be in [2, 12], got " + std::to_string(n));
  return n;
}

Dims dims_or(const ZooParams& params, Dims fallback) {
  Dims d = params.dims.value_or(std::move(fallback));
  if (d.empty()) throw Error(ErrorCode::BadParams, "dims must be nonempty");
  for (int x : d) {
    if (x < 2) throw Error(ErrorCode::BadParams, "every dimension must be >= 2");
  }
  if (total_dim(d) > 4096) throw Error(ErrorCode::BadParams, "total dimension above 4096");
  return d;
}

Matrix bell_projector() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 0.5;
  m(0, 3) = 0.5;
  m(3, 0) = 0.5;
  m(3, 3) = 0.5;
  return m;
}

}  // namespace

std::vector<std::string> zoo_names() {
  return {"bell", "ghz", "w", "product", "werner", "classical-corr", "bell-times-zero", "random-pure", "random-mixed"};
}

StateFile zoo(std::string_view name, const ZooParams& params) {
  if (name == "bell") {
    Vector v = Vector::Zero(4);
    v(0) = kInvSqrt2;
    v(3) = kInvSqrt2;
    return StateFile{{2, 2}, v, "bell"};
  }
  if (name == "ghz") {
    const int n = party_count(params, 3);
    const Dims dims(static_cast<std::size_t>(n), 2);
    Vector v = Vector::Zero(total_dim(dims));
    v(0) = kInvSqrt2;
    v(v.size() - 1) = kInvSqrt2;
    return StateFile{dims, v, "ghz" + std::to_string(n)};
  }
  if (name == "w") {
    const int n = party_count(params, 3);
    const Dims dims(static_cast<std::size_t>(n), 2);
    Vector v = Vector::Zero(total_dim(dims));
    const double a = 1.0 / std::sqrt(static_cast<double>(n));
    for (int k = 0; k < n; ++k) v(1 << k) = a;
    return StateFile{dims, v, "w" + std::to_string(n)};
  }
  if (name == "product") {
    const Dims dims = dims_or(params, {2, 2, 2});
    Vector v = Vector::Zero(total_dim(dims));
    v(0) = 1.0;
    return StateFile{dims, v, "product"};
  }
  if (name == "werner") {
    const double p = params.p.value_or(0.5);
    if (!(p >= -1.0 / 3.0 && p <= 1.0)) throw Error(ErrorCode::BadParams, "werner p must be in [-1/3, 1]");
    const Matrix m = p * bell_projector() + (1.0 - p) * 0.25 * Matrix::Identity(4, 4);
    return StateFile{{2, 2}, m, "werner"};
  }
  if (name == "classical-corr") {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = 0.5;
    m(3, 3) = 0.5;
    return StateFile{{2, 2}, m, "classical-corr"};
  }
  if (name == "bell-times-zero") {
    Matrix zero = Matrix::Zero(2, 2);
    zero(0, 0) = 1.0;
    return StateFile{{2, 2, 2}, kron(bell_projector(), zero), "bell-times-zero"};
  }
  if (name == "random-pure") {
    const Dims dims = dims_or(params, {2, 2});
    return StateFile{dims, random_pure(dims, params.seed).amplitudes(), "random-pure"};
  }
  if (name == "random-mixed") {
    const Dims dims = dims_or(params, {2, 2});
    const int rank = params.rank.value_or(total_dim(dims));
    if (rank < 1 || rank > total_dim(dims)) throw Error(ErrorCode::BadParams, "rank outside [1, D]");
    return StateFile{dims, random_mixed(dims, rank, params.seed).matrix(), "random-mixed"};
  }
  throw Error(ErrorCode::UnknownName, "unknown zoo state '" + std::string(name) + "'");
}

}  // namespace qcorr
