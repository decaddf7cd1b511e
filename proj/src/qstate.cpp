#include "qcorr/qstate.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace qcorr {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::TraceMismatch: return "TraceMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyKeep: return "EmptyKeep";
    case ErrorCode::FullKeep: return "FullKeep";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::BadRank: return "BadRank";
    case ErrorCode::TooFewParties: return "TooFewParties";
    case ErrorCode::NotBipartite: return "NotBipartite";
    case ErrorCode::BadExponent: return "BadExponent";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

std::string sci(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

void check_dims(const Dims& dims) {
  if (dims.empty()) throw Error(ErrorCode::DimensionMismatch, "empty dimension list");
  for (int d : dims) {
    if (d < 2) throw Error(ErrorCode::DimensionMismatch, "subsystem dimension " + std::to_string(d) + " < 2");
  }
}

Vector gaussian_vector(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

}  // namespace

int total_dim(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

int block_dim(const Dims& dims, std::span<const int> subset) {
  int d = 1;
  for (int s : subset) d *= dims.at(static_cast<std::size_t>(s));
  return d;
}

// -- DensityMatrix ----------------------------------------------------------

DensityMatrix DensityMatrix::validate(const Matrix& m, Dims dims, std::string label) {
  check_dims(dims);
  const int d = total_dim(dims);
  if (m.rows() != d || m.cols() != d) {
    throw Error(ErrorCode::DimensionMismatch,
                "matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                    " but dims multiply to " + std::to_string(d));
  }
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol::kValidation) {
    throw Error(ErrorCode::NotHermitian, "max |m - m^dagger| = " + sci(herm), herm);
  }
  const double trace_err = std::abs(m.trace() - Complex(1.0, 0.0));
  if (trace_err > tol::kValidation) {
    throw Error(ErrorCode::TraceMismatch, "|Tr - 1| = " + sci(trace_err), trace_err);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -tol::kValidation) {
    throw Error(ErrorCode::NotPositive, "smallest eigenvalue " + sci(min_eig), -min_eig);
  }
  if (min_eig < -tol::kClip) {
    RealVector lam = es.eigenvalues().cwiseMax(0.0);
    lam /= lam.sum();
    Matrix clipped = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
    return DensityMatrix(std::move(clipped), std::move(dims), std::move(label), true);
  }
  return DensityMatrix(m, std::move(dims), std::move(label), false);
}

DensityMatrix DensityMatrix::from_trusted(Matrix m, Dims dims, std::string label) {
  return DensityMatrix(std::move(m), std::move(dims), std::move(label), false);
}

DensityMatrix DensityMatrix::with_label(std::string label) const {
  DensityMatrix copy = *this;
  copy.label_ = std::move(label);
  return copy;
}

RealVector DensityMatrix::eigenvalues() const {
  return Eigen::SelfAdjointEigenSolver<Matrix>(m_, Eigen::EigenvaluesOnly).eigenvalues();
}

double DensityMatrix::purity() const {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return m_.squaredNorm();
}

// -- PureStateVector --------------------------------------------------------

PureStateVector PureStateVector::validate(const Vector& amplitudes, Dims dims) {
  check_dims(dims);
  if (amplitudes.size() != total_dim(dims)) {
    throw Error(ErrorCode::DimensionMismatch, "vector length " + std::to_string(amplitudes.size()) +
                                                  " but dims multiply to " + std::to_string(total_dim(dims)));
  }
  const double err = std::abs(amplitudes.squaredNorm() - 1.0);
  if (err > tol::kNorm) throw Error(ErrorCode::NotNormalized, "| |psi|^2 - 1 | = " + sci(err), err);
  return PureStateVector(amplitudes, std::move(dims));
}

PureStateVector PureStateVector::normalized(const Vector& amplitudes, Dims dims) {
  check_dims(dims);
  if (amplitudes.size() != total_dim(dims)) {
    throw Error(ErrorCode::DimensionMismatch, "vector length does not match dims");
  }
  const double n = amplitudes.norm();
  if (!(n > 0.0)) throw Error(ErrorCode::NotNormalized, "zero vector");
  return PureStateVector(amplitudes / n, std::move(dims));
}

DensityMatrix PureStateVector::projector() const {
  return DensityMatrix::from_trusted(amps_ * amps_.adjoint(), dims_);
}

// -- ProbabilityVector ------------------------------------------------------

ProbabilityVector::ProbabilityVector(std::vector<double> entries) : p_(std::move(entries)) {
  double sum = 0.0;
  for (double& x : p_) {
    if (x < -tol::kNorm) throw Error(ErrorCode::NotNormalized, "negative probability " + sci(x), -x);
    x = std::max(x, 0.0);
    sum += x;
  }
  if (std::abs(sum - 1.0) > tol::kNorm) {
    throw Error(ErrorCode::NotNormalized, "probabilities sum to " + std::to_string(sum), std::abs(sum - 1.0));
  }
}

// -- index calculus ---------------------------------------------------------

std::vector<int> subsystem_offsets(const Dims& dims, std::span<const int> subset) {
  const int n = static_cast<int>(dims.size());
  std::vector<int> stride(dims.size(), 1);
  for (int k = n - 2; k >= 0; --k) stride[k] = stride[k + 1] * dims[k + 1];

  std::vector<int> offsets{0};
  for (int s : subset) {
    std::vector<int> next;
    next.reserve(offsets.size() * static_cast<std::size_t>(dims[s]));
    for (int base : offsets) {
      for (int i = 0; i < dims[s]; ++i) next.push_back(base + i * stride[s]);
    }
    offsets = std::move(next);
  }
  return offsets;
}

Subset complement(std::span<const int> subset, int n) {
  Subset out;
  for (int k = 0; k < n; ++k) {
    if (std::find(subset.begin(), subset.end(), k) == subset.end()) out.push_back(k);
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

Matrix reduce(const Matrix& m, const Dims& dims, std::span<const int> keep) {
  const Subset traced = complement(keep, static_cast<int>(dims.size()));
  const std::vector<int> kept_off = subsystem_offsets(dims, keep);
  const std::vector<int> traced_off = subsystem_offsets(dims, traced);
  const int dk = static_cast<int>(kept_off.size());
  Matrix out = Matrix::Zero(dk, dk);
  for (int a = 0; a < dk; ++a) {
    for (int b = 0; b < dk; ++b) {
      Complex acc(0.0, 0.0);
      for (int t : traced_off) acc += m(kept_off[a] + t, kept_off[b] + t);
      out(a, b) = acc;
    }
  }
  return out;
}

Matrix permute_subsystems(const Matrix& m, const Dims& dims, std::span<const int> order) {
  const std::vector<int> off = subsystem_offsets(dims, order);
  const int d = static_cast<int>(off.size());
  Matrix out(d, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) out(i, j) = m(off[i], off[j]);
  }
  return out;
}

Vector permute_subsystems(const Vector& v, const Dims& dims, std::span<const int> order) {
  const std::vector<int> off = subsystem_offsets(dims, order);
  Vector out(static_cast<Eigen::Index>(off.size()));
  for (std::size_t i = 0; i < off.size(); ++i) out(static_cast<Eigen::Index>(i)) = v(off[i]);
  return out;
}

// -- state operations -------------------------------------------------------

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityMatrix::from_trusted(kron(a.matrix(), b.matrix()), std::move(dims));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const int n = rho.parties();
  if (keep.empty()) throw Error(ErrorCode::EmptyKeep, "nothing to keep");
  Subset sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  for (int k : sorted) {
    if (k < 0 || k >= n) throw Error(ErrorCode::IndexOutOfRange, "subsystem " + std::to_string(k));
  }
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::IndexOutOfRange, "duplicate subsystem index");
  }
  if (static_cast<int>(sorted.size()) == n) throw Error(ErrorCode::FullKeep, "keep covers every subsystem");

  Dims kept_dims;
  for (int k : sorted) kept_dims.push_back(rho.dims()[k]);
  return DensityMatrix::from_trusted(reduce(rho.matrix(), rho.dims(), sorted), std::move(kept_dims));
}

DensityMatrix permute_subsystems(const DensityMatrix& rho, std::span<const int> order) {
  if (static_cast<int>(order.size()) != rho.parties()) {
    throw Error(ErrorCode::DimensionMismatch, "permutation length does not match party count");
  }
  Dims dims;
  for (int k : order) dims.push_back(rho.dims().at(static_cast<std::size_t>(k)));
  return DensityMatrix::from_trusted(permute_subsystems(rho.matrix(), rho.dims(), order), std::move(dims),
                                     rho.label());
}

// -- matrix functions -------------------------------------------------------

namespace {

// Eigenvalues at or below n * eps * lambda_max are eigensolver noise; a
// fractional power would amplify them (sqrt(1e-17) ~ 3e-9), so they map to 0.
double noise_floor(const RealVector& lam) {
  return static_cast<double>(lam.size()) * std::numeric_limits<double>::epsilon() * lam.cwiseAbs().maxCoeff();
}

}  // namespace

Matrix matrix_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -tol::kValidation) {
    throw Error(ErrorCode::NotPositive, "smallest eigenvalue " + sci(min_eig), -min_eig);
  }
  const double floor = noise_floor(es.eigenvalues());
  const RealVector root = es.eigenvalues().unaryExpr([floor](double x) { return x > floor ? std::sqrt(x) : 0.0; });
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix matrix_power(const Matrix& m, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  const double floor = noise_floor(es.eigenvalues());
  const RealVector mapped = es.eigenvalues().unaryExpr([floor, t](double x) { return x > floor ? std::pow(x, t) : 0.0; });
  return es.eigenvectors() * mapped.asDiagonal() * es.eigenvectors().adjoint();
}

SpectralLog matrix_log2(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  const auto& lam = es.eigenvalues();
  const auto& v = es.eigenvectors();
  RealVector logs(lam.size());
  RealVector null(lam.size());
  int null_dim = 0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    const bool support = lam(i) > tol::kClip;
    logs(i) = support ? std::log2(lam(i)) : 0.0;
    null(i) = support ? 0.0 : 1.0;
    null_dim += support ? 0 : 1;
  }
  return SpectralLog{v * logs.asDiagonal() * v.adjoint(), v * null.asDiagonal() * v.adjoint(), null_dim};
}

// -- entropies --------------------------------------------------------------

double spectrum_entropy(const RealVector& eigenvalues) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) s += entropy_term(eigenvalues(i));
  return std::max(s, 0.0);
}

double von_neumann_entropy(const Matrix& m) {
  return spectrum_entropy(Eigen::SelfAdjointEigenSolver<Matrix>(m, Eigen::EigenvaluesOnly).eigenvalues());
}

double shannon_entropy(std::span<const double> p) {
  double s = 0.0;
  for (double x : p) s += entropy_term(x);
  return std::max(s, 0.0);
}

double relative_entropy(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "relative entropy of operators with different dimensions");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> er(rho);
  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma);
  const RealVector& lam = er.eigenvalues();
  const RealVector& mu = es.eigenvalues();
  // overlap(i, j) = |<r_i|s_j>|^2
  const Eigen::MatrixXd overlap = (er.eigenvectors().adjoint() * es.eigenvectors()).cwiseAbs2();

  double rho_log_rho = 0.0;
  double rho_log_sigma = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) <= tol::kClip) continue;
    rho_log_rho += lam(i) * std::log2(lam(i));
    double null_weight = 0.0;
    double cross = 0.0;
    for (Eigen::Index j = 0; j < mu.size(); ++j) {
      if (mu(j) > tol::kClip) {
        cross += overlap(i, j) * std::log2(mu(j));
      } else {
        null_weight += overlap(i, j);
      }
    }
    if (lam(i) > tol::kValidation && std::sqrt(null_weight) > 1e-8) {
      return std::numeric_limits<double>::infinity();
    }
    rho_log_sigma += lam(i) * cross;
  }
  return std::max(rho_log_rho - rho_log_sigma, 0.0);
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "relative entropy of states with different dimensions");
  }
  return relative_entropy(rho.matrix(), sigma.matrix());
}

double mutual_information(const DensityMatrix& rho, std::span<const int> gamma) {
  Subset g(gamma.begin(), gamma.end());
  std::sort(g.begin(), g.end());
  const Subset gp = complement(g, rho.parties());
  if (g.empty() || gp.empty()) throw Error(ErrorCode::BadParams, "mutual information needs a proper cut");
  const double s_g = von_neumann_entropy(reduce(rho.matrix(), rho.dims(), g));
  const double s_gp = von_neumann_entropy(reduce(rho.matrix(), rho.dims(), gp));
  return s_g + s_gp - von_neumann_entropy(rho);
}

// -- random states ----------------------------------------------------------

PureStateVector random_pure(const Dims& dims, std::uint64_t seed) {
  check_dims(dims);
  std::mt19937_64 rng(seed);
  return PureStateVector::normalized(gaussian_vector(rng, total_dim(dims)), dims);
}

DensityMatrix random_mixed(const Dims& dims, int rank, std::uint64_t seed) {
  check_dims(dims);
  const int d = total_dim(dims);
  if (rank < 1 || rank > d) {
    throw Error(ErrorCode::BadRank, "rank " + std::to_string(rank) + " outside [1, " + std::to_string(d) + "]");
  }
  std::mt19937_64 rng(seed);
  Matrix g(d, rank);
  for (int c = 0; c < rank; ++c) g.col(c) = gaussian_vector(rng, d);
  Matrix m = g * g.adjoint();
  m = (0.5 * (m + m.adjoint())).eval();
  m /= m.trace().real();
  return DensityMatrix::validate(m, dims);
}

Matrix random_unitary(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Matrix g(d, d);
  for (int c = 0; c < d; ++c) g.col(c) = gaussian_vector(rng, d);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k) {
    const Complex diag = r(k, k);
    const double a = std::abs(diag);
    if (a > 0.0) q.col(k) *= diag / a;
  }
  return q;
}

}  // namespace qcorr
