#pragma once

// Projective (von Neumann) measurements and the non-selective dephasing maps
// they induce: whole system, a single block, or a product measurement on both
// sides of a cut.

#include <cstdint>
#include <span>
#include <vector>

#include "qcorr/partitions.hpp"
#include "qcorr/qstate.hpp"

namespace qcorr {

/// Complete set of rank-1 orthogonal projectors |b_k><b_k| on a d-dimensional
/// block, stored as the columns b_k. The phase of each column is fixed so its
/// first nonzero component is real and positive.
class ProjectiveBasis {
 public:
  /// Throws DimensionMismatch for non-square input and NotNormalized when the
  /// orthonormality defect exceeds 1e-10.
  static ProjectiveBasis from_columns(const Matrix& vectors);
  /// Skips the orthonormality check (columns of a unitary built in-library).
  static ProjectiveBasis from_unitary(const Matrix& unitary);

  static ProjectiveBasis computational(int d);
  static ProjectiveBasis fourier(int d);
  /// (|00> + |11>)/sqrt2, (|00> - |11>)/sqrt2, (|01> + |10>)/sqrt2, (|01> - |10>)/sqrt2.
  static ProjectiveBasis bell();
  /// Eigenvectors of a Hermitian matrix, ascending eigenvalue order.
  static ProjectiveBasis eigenbasis(const Matrix& hermitian);

  int dim() const noexcept { return static_cast<int>(v_.cols()); }
  const Matrix& vectors() const noexcept { return v_; }
  Matrix projector(int k) const { return v_.col(k) * v_.col(k).adjoint(); }

  /// max |<b_i|b_j> - delta_ij|
  double orthonormality_defect() const;
  /// max |sum_k P_k - I|
  double completeness_defect() const;

 private:
  explicit ProjectiveBasis(Matrix v) : v_(std::move(v)) {}
  Matrix v_;
};

/// First nonzero component of every column made real positive.
Matrix gauge_fixed(Matrix columns);

/// Kronecker product of block bases, first argument most significant.
ProjectiveBasis product_basis(const ProjectiveBasis& a, const ProjectiveBasis& b);
ProjectiveBasis product_basis(std::span<const ProjectiveBasis> factors);

/// The measurement Pi_j = Pi_gamma^k (x) Pi_gamma'^k' for one cut.
class CutMeasurement {
 public:
  /// Throws DimensionMismatch when a basis does not match its block.
  CutMeasurement(Partition cut, ProjectiveBasis basis_gamma, ProjectiveBasis basis_gamma_prime);

  const Partition& cut() const noexcept { return cut_; }
  const ProjectiveBasis& basis_gamma() const noexcept { return bg_; }
  const ProjectiveBasis& basis_gamma_prime() const noexcept { return bgp_; }

  /// Columns are the product vectors b_k (x) b_k', in cut (gamma, gamma') order.
  Matrix product_frame() const { return kron(bg_.vectors(), bgp_.vectors()); }

 private:
  Partition cut_;
  ProjectiveBasis bg_;
  ProjectiveBasis bgp_;
};

struct ConditionalEnsemble {
  ProbabilityVector probabilities;
  /// Post-measurement states of the unmeasured block.
  std::vector<DensityMatrix> states;
  /// Basis index of each retained outcome.
  std::vector<int> outcomes;
};

/// Outcomes with p_j at or below this are dropped from ensembles.
inline constexpr double kNegligibleOutcome = 1e-14;

/// sum_k P_k m P_k for a basis of the full space: B diag(B^dagger m B) B^dagger.
Matrix dephase(const Matrix& m, const Matrix& basis);
DensityMatrix dephase(const DensityMatrix& rho, const ProjectiveBasis& basis);

/// Dephasing of the subsystems in `block` (sorted) with the identity on the
/// rest. The basis acts on the block in its listed subsystem order.
DensityMatrix dephase_block(const DensityMatrix& rho, std::span<const int> block, const ProjectiveBasis& basis);

/// Phi^gamma: dephasing in the product basis of the cut, returned in the
/// original subsystem order.
DensityMatrix dephase_cut(const DensityMatrix& rho, const CutMeasurement& m);

/// Measures the gamma' block of `cut` in `basis_gamma_prime` and returns the
/// outcome distribution with the conditional states of the gamma block.
ConditionalEnsemble conditional_ensemble(const DensityMatrix& rho, const Partition& cut,
                                         const ProjectiveBasis& basis_gamma_prime);

/// Computational and Fourier bases; d = 4 adds the Bell basis.
std::vector<ProjectiveBasis> canonical_bases(int d);

/// Gauge-fixed orthonormal frame of a seeded complex Gaussian matrix.
ProjectiveBasis random_basis(int d, std::uint64_t seed);

}  // namespace qcorr
