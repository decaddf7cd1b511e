#pragma once

// Density-operator algebra: validated states, tensor and partial-trace
// calculus, Hermitian matrix functions and entropies. All logarithms are
// base 2; every entropy is reported in bits.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qcorr/error.hpp"

namespace qcorr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
/// Subsystem dimensions, first subsystem most significant in the
/// computational-basis index (standard Kronecker ordering).
using Dims = std::vector<int>;
/// Subsystem indices are 0-based in the C++ API; the "1|23" text syntax is
/// 1-based.
using Subset = std::vector<int>;

namespace tol {
/// Hermiticity / trace / positivity tolerance for state validation.
inline constexpr double kValidation = 1e-10;
/// Eigenvalues at or below this are treated as zero (0 log 0 = 0).
inline constexpr double kClip = 1e-12;
/// Unit-norm tolerance for pure-state vectors and probability vectors.
inline constexpr double kNorm = 1e-12;
}  // namespace tol

int total_dim(const Dims& dims);
/// Product of dims over the listed subsystems.
int block_dim(const Dims& dims, std::span<const int> subset);

/// Positive semidefinite, unit-trace operator with an explicit subsystem
/// dimension list. Immutable after construction.
class DensityMatrix {
 public:
  /// Checks Hermiticity, trace and positivity at tol::kValidation. Eigenvalues
  /// in [-1e-10, -1e-12) are clipped to zero and the trace renormalized; below
  /// that the input is stored verbatim.
  static DensityMatrix validate(const Matrix& m, Dims dims, std::string label = {});

  /// No spectral checks. For outputs of trace-preserving maps applied to
  /// states that were already validated.
  static DensityMatrix from_trusted(Matrix m, Dims dims, std::string label = {});

  const Matrix& matrix() const noexcept { return m_; }
  const Dims& dims() const noexcept { return dims_; }
  const std::string& label() const noexcept { return label_; }
  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  int parties() const noexcept { return static_cast<int>(dims_.size()); }
  bool clipped() const noexcept { return clipped_; }

  DensityMatrix with_label(std::string label) const;
  RealVector eigenvalues() const;
  double purity() const;

 private:
  DensityMatrix(Matrix m, Dims dims, std::string label, bool clipped)
      : m_(std::move(m)), dims_(std::move(dims)), label_(std::move(label)), clipped_(clipped) {}

  Matrix m_;
  Dims dims_;
  std::string label_;
  bool clipped_ = false;
};

class PureStateVector {
 public:
  /// Rejects vectors whose squared norm is off by more than tol::kNorm.
  static PureStateVector validate(const Vector& amplitudes, Dims dims);
  /// Rescales to unit norm; rejects the zero vector.
  static PureStateVector normalized(const Vector& amplitudes, Dims dims);

  const Vector& amplitudes() const noexcept { return amps_; }
  const Dims& dims() const noexcept { return dims_; }
  int dim() const noexcept { return static_cast<int>(amps_.size()); }
  int parties() const noexcept { return static_cast<int>(dims_.size()); }

  DensityMatrix projector() const;

 private:
  PureStateVector(Vector a, Dims d) : amps_(std::move(a)), dims_(std::move(d)) {}

  Vector amps_;
  Dims dims_;
};

class ProbabilityVector {
 public:
  /// Entries must be nonnegative (down to -1e-12) and sum to 1 within 1e-12.
  explicit ProbabilityVector(std::vector<double> entries);

  std::span<const double> entries() const noexcept { return p_; }
  std::size_t size() const noexcept { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }

 private:
  std::vector<double> p_;
};

// -- index calculus ---------------------------------------------------------

/// Computational-basis offsets of every multi-index over `subset` (last
/// listed subsystem fastest). Adding offsets of complementary subsets gives
/// the full index.
std::vector<int> subsystem_offsets(const Dims& dims, std::span<const int> subset);

/// Sorted complement of `subset` in {0..n-1}.
Subset complement(std::span<const int> subset, int n);

Matrix kron(const Matrix& a, const Matrix& b);

/// Reduced operator on `keep` (any order-preserving subset) without
/// validation; `keep` must be sorted.
Matrix reduce(const Matrix& m, const Dims& dims, std::span<const int> keep);

/// Relabels subsystems: position i of the result holds original subsystem
/// order[i].
Matrix permute_subsystems(const Matrix& m, const Dims& dims, std::span<const int> order);
Vector permute_subsystems(const Vector& v, const Dims& dims, std::span<const int> order);

// -- state operations -------------------------------------------------------

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Marginal on the subsystems in `keep`, kept in their original order.
/// Throws EmptyKeep, FullKeep, IndexOutOfRange.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);

DensityMatrix permute_subsystems(const DensityMatrix& rho, std::span<const int> order);

// -- matrix functions -------------------------------------------------------

/// f applied to the spectrum of the Hermitian part of `m`.
template <typename F>
Matrix apply_spectral(const Matrix& m, F&& f) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  RealVector mapped = es.eigenvalues().unaryExpr(f);
  return es.eigenvectors() * mapped.asDiagonal() * es.eigenvectors().adjoint();
}

/// Principal square root of a PSD matrix. Throws NotPositive when the
/// smallest eigenvalue is below -1e-10; smaller negatives are clipped.
Matrix matrix_sqrt(const Matrix& m);
inline Matrix matrix_sqrt(const DensityMatrix& rho) { return matrix_sqrt(rho.matrix()); }

/// m^t for PSD m and t > 0, spectral.
Matrix matrix_power(const Matrix& m, double t);

struct SpectralLog {
  /// log2 on the support (eigenvalues > tol::kClip), zero on the null space.
  Matrix log2;
  /// Orthogonal projector onto the null space (eigenvalues <= tol::kClip).
  Matrix null_projector;
  int null_dimension = 0;
};

SpectralLog matrix_log2(const Matrix& m);
inline SpectralLog matrix_log2(const DensityMatrix& rho) { return matrix_log2(rho.matrix()); }

// -- entropies --------------------------------------------------------------

/// -x log2 x with the 0 log 0 = 0 convention below tol::kClip.
inline double entropy_term(double x) { return x > tol::kClip ? -x * std::log2(x) : 0.0; }

double spectrum_entropy(const RealVector& eigenvalues);
double von_neumann_entropy(const Matrix& m);
inline double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.matrix()); }

double shannon_entropy(std::span<const double> p);
inline double shannon_entropy(const ProbabilityVector& p) { return shannon_entropy(p.entries()); }

/// S(rho||sigma) in bits, or +infinity when supp(rho) is not contained in
/// supp(sigma): some eigenvector of rho with eigenvalue > 1e-10 has a
/// component > 1e-8 in the null space of sigma.
double relative_entropy(const Matrix& rho, const Matrix& sigma);
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// S(rho_gamma) + S(rho_gamma') - S(rho) for the cut gamma | complement.
double mutual_information(const DensityMatrix& rho, std::span<const int> gamma);

// -- random states ----------------------------------------------------------

/// Haar-random pure state: normalized vector of i.i.d. standard complex
/// Gaussians.
PureStateVector random_pure(const Dims& dims, std::uint64_t seed);
/// GG^dagger / Tr(GG^dagger) with G a D x rank complex Gaussian matrix.
/// Throws BadRank unless 1 <= rank <= D.
DensityMatrix random_mixed(const Dims& dims, int rank, std::uint64_t seed);
/// Haar-random d x d unitary (QR of a Ginibre matrix with the R-diagonal
/// phase fix).
Matrix random_unitary(int d, std::uint64_t seed);

}  // namespace qcorr
