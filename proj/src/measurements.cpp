#include "qcorr/measurements.hpp"

#include <cmath>
#include <numbers>

namespace qcorr {

Matrix gauge_fixed(Matrix columns) {
  for (Eigen::Index c = 0; c < columns.cols(); ++c) {
    for (Eigen::Index r = 0; r < columns.rows(); ++r) {
      const double a = std::abs(columns(r, c));
      if (a > tol::kClip) {
        columns.col(c) *= std::conj(columns(r, c)) / a;
        columns(r, c) = Complex(a, 0.0);
        break;
      }
    }
  }
  return columns;
}

ProjectiveBasis ProjectiveBasis::from_columns(const Matrix& vectors) {
  if (vectors.rows() != vectors.cols() || vectors.rows() < 1) {
    throw Error(ErrorCode::DimensionMismatch, "basis matrix must be square");
  }
  ProjectiveBasis b(gauge_fixed(vectors));
  const double defect = b.orthonormality_defect();
  if (defect > tol::kValidation) {
    throw Error(ErrorCode::NotNormalized, "basis orthonormality defect " + std::to_string(defect), defect);
  }
  return b;
}

ProjectiveBasis ProjectiveBasis::from_unitary(const Matrix& unitary) { return ProjectiveBasis(gauge_fixed(unitary)); }

ProjectiveBasis ProjectiveBasis::computational(int d) { return ProjectiveBasis(Matrix::Identity(d, d)); }

ProjectiveBasis ProjectiveBasis::fourier(int d) {
  Matrix f(d, d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % d) / d;
      f(j, k) = std::polar(norm, angle);
    }
  }
  return ProjectiveBasis(gauge_fixed(f));
}

ProjectiveBasis ProjectiveBasis::bell() {
  const double h = std::numbers::sqrt2 / 2.0;
  Matrix b = Matrix::Zero(4, 4);
  b(0, 0) = h;  b(3, 0) = h;
  b(0, 1) = h;  b(3, 1) = -h;
  b(1, 2) = h;  b(2, 2) = h;
  b(1, 3) = h;  b(2, 3) = -h;
  return ProjectiveBasis(b);
}

ProjectiveBasis ProjectiveBasis::eigenbasis(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian);
  return ProjectiveBasis(gauge_fixed(es.eigenvectors()));
}

double ProjectiveBasis::orthonormality_defect() const {
  const Matrix gram = v_.adjoint() * v_;
  return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

double ProjectiveBasis::completeness_defect() const {
  Matrix sum = Matrix::Zero(v_.rows(), v_.rows());
  for (int k = 0; k < dim(); ++k) sum += projector(k);
  return (sum - Matrix::Identity(v_.rows(), v_.rows())).cwiseAbs().maxCoeff();
}

ProjectiveBasis product_basis(const ProjectiveBasis& a, const ProjectiveBasis& b) {
  return ProjectiveBasis::from_unitary(kron(a.vectors(), b.vectors()));
}

ProjectiveBasis product_basis(std::span<const ProjectiveBasis> factors) {
  Matrix v = Matrix::Identity(1, 1);
  for (const auto& f : factors) v = kron(v, f.vectors());
  return ProjectiveBasis::from_unitary(v);
}

CutMeasurement::CutMeasurement(Partition cut, ProjectiveBasis basis_gamma, ProjectiveBasis basis_gamma_prime)
    : cut_(std::move(cut)), bg_(std::move(basis_gamma)), bgp_(std::move(basis_gamma_prime)) {
  if (bg_.dim() != cut_.d_gamma() || bgp_.dim() != cut_.d_gamma_prime()) {
    throw Error(ErrorCode::DimensionMismatch,
                "basis dims " + std::to_string(bg_.dim()) + "," + std::to_string(bgp_.dim()) + " do not match cut " +
                    cut_.to_string() + " blocks " + std::to_string(cut_.d_gamma()) + "," +
                    std::to_string(cut_.d_gamma_prime()));
  }
}

Matrix dephase(const Matrix& m, const Matrix& basis) {
  const Matrix rotated = basis.adjoint() * m * basis;
  const Vector diag = rotated.diagonal();
  return basis * diag.asDiagonal() * basis.adjoint();
}

DensityMatrix dephase(const DensityMatrix& rho, const ProjectiveBasis& basis) {
  if (basis.dim() != rho.dim()) throw Error(ErrorCode::DimensionMismatch, "basis dim does not match state dim");
  return DensityMatrix::from_trusted(dephase(rho.matrix(), basis.vectors()), rho.dims(), rho.label());
}

DensityMatrix dephase_block(const DensityMatrix& rho, std::span<const int> block, const ProjectiveBasis& basis) {
  const Subset rest = complement(block, rho.parties());
  if (basis.dim() != block_dim(rho.dims(), block)) {
    throw Error(ErrorCode::DimensionMismatch, "basis dim does not match block dim");
  }
  if (rest.empty()) return dephase(rho, basis);

  Subset order(block.begin(), block.end());
  order.insert(order.end(), rest.begin(), rest.end());
  const Matrix permuted = permute_subsystems(rho.matrix(), rho.dims(), order);
  const int db = basis.dim();
  const int dr = block_dim(rho.dims(), rest);

  const Matrix frame = kron(basis.vectors(), Matrix::Identity(dr, dr));
  Matrix w = frame.adjoint() * permuted * frame;
  for (int a = 0; a < db; ++a) {
    for (int b = 0; b < db; ++b) {
      if (a != b) w.block(a * dr, b * dr, dr, dr).setZero();
    }
  }
  const Matrix out = frame * w * frame.adjoint();

  Subset inverse(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) inverse[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  Dims permuted_dims;
  for (int k : order) permuted_dims.push_back(rho.dims()[k]);
  return DensityMatrix::from_trusted(permute_subsystems(out, permuted_dims, inverse), rho.dims(), rho.label());
}

DensityMatrix dephase_cut(const DensityMatrix& rho, const CutMeasurement& m) {
  if (rho.dims() != m.cut().dims()) throw Error(ErrorCode::DimensionMismatch, "measurement defined on other dims");
  const DensityMatrix permuted = permute_to_cut(rho, m.cut());
  const Matrix out = dephase(permuted.matrix(), m.product_frame());
  return restore_from_cut(DensityMatrix::from_trusted(out, permuted.dims()), m.cut()).with_label(rho.label());
}

ConditionalEnsemble conditional_ensemble(const DensityMatrix& rho, const Partition& cut,
                                         const ProjectiveBasis& basis_gamma_prime) {
  if (rho.dims() != cut.dims() || basis_gamma_prime.dim() != cut.d_gamma_prime()) {
    throw Error(ErrorCode::DimensionMismatch, "basis or cut does not match the state");
  }
  const Matrix permuted = permute_to_cut(rho, cut).matrix();
  const int dg = cut.d_gamma();
  const int dgp = cut.d_gamma_prime();
  const Matrix id = Matrix::Identity(dg, dg);

  std::vector<double> probs;
  std::vector<DensityMatrix> states;
  std::vector<int> outcomes;
  for (int j = 0; j < dgp; ++j) {
    // K = I (x) <b_j|
    const Matrix k = kron(id, basis_gamma_prime.vectors().col(j).adjoint());
    Matrix cond = k * permuted * k.adjoint();
    const double p = cond.trace().real();
    if (p <= kNegligibleOutcome) continue;
    cond = (0.5 * (cond + cond.adjoint()) / p).eval();
    probs.push_back(p);
    states.push_back(DensityMatrix::from_trusted(std::move(cond), cut.dims_gamma()));
    outcomes.push_back(j);
  }
  double total = 0.0;
  for (double p : probs) total += p;
  for (double& p : probs) p /= total;
  return ConditionalEnsemble{ProbabilityVector(std::move(probs)), std::move(states), std::move(outcomes)};
}

std::vector<ProjectiveBasis> canonical_bases(int d) {
  std::vector<ProjectiveBasis> out{ProjectiveBasis::computational(d), ProjectiveBasis::fourier(d)};
  if (d == 4) out.push_back(ProjectiveBasis::bell());
  return out;
}

ProjectiveBasis random_basis(int d, std::uint64_t seed) {
  return ProjectiveBasis::from_unitary(random_unitary(d, seed));
}

}  // namespace qcorr
