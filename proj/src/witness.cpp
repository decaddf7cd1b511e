#include "qcorr/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qcorr {

namespace {

void same_size(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "operators of different dimensions");
  }
}

// 1 - Tr rho_g^2 of the pure state with amplitude matrix m (rows gamma), as
// 2 sum_{i<j, k<l} |m_ik m_jl - m_il m_jk|^2 / ||m||^4. Unlike 1 - purity
// this has no cancellation, so product states give 0 to rounding.
double linear_entropy(const Matrix& m) {
  double minors = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m.rows(); ++j) {
      for (Eigen::Index k = 0; k < m.cols(); ++k) {
        for (Eigen::Index l = k + 1; l < m.cols(); ++l) minors += std::norm(m(i, k) * m(j, l) - m(i, l) * m(j, k));
      }
    }
  }
  const double norm2 = m.squaredNorm();
  return 2.0 * minors / (norm2 * norm2);
}

Matrix amplitude_matrix(const Vector& psi, const Partition& cut, const std::vector<int>& offsets) {
  Matrix m(cut.d_gamma(), cut.d_gamma_prime());
  for (int a = 0; a < cut.d_gamma(); ++a) {
    for (int b = 0; b < cut.d_gamma_prime(); ++b) m(a, b) = psi(offsets[a * cut.d_gamma_prime() + b]);
  }
  return m;
}

/// Pure-state amplitudes reshaped as a d_gamma x d_gamma' matrix for each
/// cut, via cached permutation offsets.
class CutPurities {
 public:
  explicit CutPurities(const Dims& dims) : cuts_(enumerate_bipartitions(dims)) {
    for (const auto& c : cuts_) offsets_.push_back(subsystem_offsets(dims, c.order()));
  }

  const std::vector<Partition>& cuts() const { return cuts_; }

  double linear_entropy_at(const Vector& psi, std::size_t i) const {
    return linear_entropy(amplitude_matrix(psi, cuts_[i], offsets_[i]));
  }

  /// min over cuts of sqrt(1 - purity) for an arbitrary nonzero vector.
  double gme_concurrence(const Vector& psi) const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cuts_.size(); ++i) best = std::min(best, std::sqrt(linear_entropy_at(psi, i)));
    return best;
  }

 private:
  std::vector<Partition> cuts_;
  std::vector<std::vector<int>> offsets_;
};

// Re Tr(a b) for Hermitian a, b as sum Re(a_ij conj(b_ij)); the summand is
// symmetric in a and b, so swapping the arguments gives the same bits.
double d2_from_roots(const Matrix& a, const Matrix& b) {
  double overlap = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      overlap += a(i, j).real() * b(i, j).real() + a(i, j).imag() * b(i, j).imag();
    }
  }
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * overlap));
}

}  // namespace

double dp_distance(const Matrix& rho, const Matrix& sigma, double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::BadExponent, "p = " + std::to_string(p) + " < 1");
  same_size(rho, sigma);
  const Matrix x = matrix_power(rho, 1.0 / p) - matrix_power(sigma, 1.0 / p);
  const RealVector lam = Eigen::SelfAdjointEigenSolver<Matrix>(x, Eigen::EigenvaluesOnly).eigenvalues();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) sum += std::pow(std::abs(lam(i)), p);
  return std::pow(sum, 1.0 / p);
}

double dp_distance(const DensityMatrix& rho, const DensityMatrix& sigma, double p) {
  return dp_distance(rho.matrix(), sigma.matrix(), p);
}

double d2_distance(const Matrix& rho, const Matrix& sigma) {
  same_size(rho, sigma);
  return d2_from_roots(matrix_sqrt(rho), matrix_sqrt(sigma));
}

double d2_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return d2_distance(rho.matrix(), sigma.matrix());
}

WitnessReport witness_W(const DensityMatrix& rho) {
  WitnessReport out;
  out.value = std::numeric_limits<double>::infinity();
  const auto cuts = enumerate_bipartitions(rho.dims());
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const Matrix permuted = permute_to_cut(rho, cuts[i]).matrix();
    const Dims two{cuts[i].d_gamma(), cuts[i].d_gamma_prime()};
    // sqrt(a (x) b) = sqrt(a) (x) sqrt(b), which avoids rooting the product's noise.
    const Matrix root_product =
        kron(matrix_sqrt(reduce(permuted, two, Subset{0})), matrix_sqrt(reduce(permuted, two, Subset{1})));
    const double d2 = d2_from_roots(matrix_sqrt(permuted), root_product);
    if (d2 < out.value) {
      out.value = d2;
      out.best = i;
    }
    out.per_partition.push_back(PartitionValue{cuts[i], d2});
  }
  if (std::abs(rho.purity() - 1.0) <= tol::kValidation) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
    const Vector psi = es.eigenvectors().col(rho.dim() - 1);
    const double c = CutPurities(rho.dims()).gme_concurrence(psi);
    out.gme_concurrence = c;
    out.sqrt2_gme_concurrence = std::sqrt(2.0) * c;
  }
  return out;
}

namespace {

Matrix cut_amplitudes(const PureStateVector& psi, const Partition& cut) {
  if (psi.dims() != cut.dims()) throw Error(ErrorCode::DimensionMismatch, "cut defined on other dims");
  return amplitude_matrix(psi.amplitudes(), cut, subsystem_offsets(psi.dims(), cut.order()));
}

}  // namespace

double marginal_purity(const PureStateVector& psi, const Partition& cut) {
  const Matrix m = cut_amplitudes(psi, cut);
  return (m * m.adjoint()).squaredNorm();
}

double concurrence_pure(const PureStateVector& psi) {
  if (psi.parties() != 2) {
    throw Error(ErrorCode::NotBipartite, "expected 2 parties, got " + std::to_string(psi.parties()));
  }
  return std::sqrt(2.0 * linear_entropy(cut_amplitudes(psi, Partition::make(psi.dims(), Subset{0}))));
}

double gamma_concurrence(const PureStateVector& psi, const Partition& cut) {
  return std::sqrt(linear_entropy(cut_amplitudes(psi, cut)));
}

double gme_concurrence_pure(const PureStateVector& psi) { return CutPurities(psi.dims()).gme_concurrence(psi.amplitudes()); }

BiseparabilityVerdict biseparable_pure(const PureStateVector& psi, double tol) {
  const auto cuts = enumerate_bipartitions(psi.dims());
  std::size_t best = 0;
  double best_c = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const double c = gamma_concurrence(psi, cuts[i]);
    if (c < best_c) {
      best_c = c;
      best = i;
    }
  }
  return BiseparabilityVerdict{best_c <= tol, cuts[best], best_c};
}

ConvexRoofResult gme_concurrence_upper(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  cfg.validate();
  const CutPurities purities(rho.dims());

  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = es.eigenvalues().size() - 1; i >= 0; --i) {
    if (es.eigenvalues()(i) > tol::kClip) support.push_back(i);
  }
  const int r = static_cast<int>(support.size());
  // Columns sqrt(lambda_i) e_i, largest eigenvalue first.
  Matrix ensemble(rho.dim(), r);
  for (int k = 0; k < r; ++k) {
    ensemble.col(k) = std::sqrt(es.eigenvalues()(support[k])) * es.eigenvectors().col(support[k]);
  }

  const FrameObjective objective = [&](std::span<const Matrix> frames) {
    // psi_k = sum_i U_ki sqrt(lambda_i) e_i, U = first r columns of the frame.
    const Matrix& w = frames.front();
    const Matrix psis = ensemble * w.leftCols(r).transpose();
    double avg = 0.0;
    for (Eigen::Index k = 0; k < psis.cols(); ++k) {
      const double p = psis.col(k).squaredNorm();
      if (p <= kNegligibleOutcome) continue;
      avg += p * purities.gme_concurrence(psis.col(k));
    }
    return avg;
  };

  std::vector<std::vector<Matrix>> starts{{Matrix::Identity(r, r)}};
  for (int s = 0; s < cfg.n_random_starts; ++s) {
    const int m = (s % 2 == 0) ? r : r + 2;
    starts.push_back({random_unitary(m, derive_seed(cfg.seed, 0, static_cast<std::uint64_t>(s), 7))});
  }

  FrameSearchSettings settings;
  settings.max_iterations = cfg.max_iterations;
  settings.ftol = cfg.ftol;
  settings.step = cfg.step;
  settings.threads = cfg.threads;
  settings.side = ChartSide::Left;
  const FrameSearchResult res = minimize_over_frames(objective, starts, settings);

  ConvexRoofResult out;
  out.value = std::max(0.0, res.best_value);
  out.eigen_decomposition_value = objective(starts.front());
  out.rank = r;
  out.ensemble_size = static_cast<int>(res.best_frames.front().rows());
  out.per_start_values = res.per_start_values;
  out.evaluations = res.evaluations;
  out.converged = res.converged;
  return out;
}

GmcCheckReport gmc_commutator_check(const DensityMatrix& rho) {
  GmcCheckReport out;
  out.min_norm = std::numeric_limits<double>::infinity();
  const auto cuts = enumerate_bipartitions(rho.dims());
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const Matrix permuted = permute_to_cut(rho, cuts[i]).matrix();
    const Dims two{cuts[i].d_gamma(), cuts[i].d_gamma_prime()};
    const Matrix product = kron(reduce(permuted, two, Subset{0}), reduce(permuted, two, Subset{1}));
    const double norm = (permuted * product - product * permuted).norm();
    if (norm < out.min_norm) {
      out.min_norm = norm;
      out.best = i;
    }
    out.commutator_norms.push_back(PartitionValue{cuts[i], norm});
  }
  out.verdict = std::string(out.min_norm <= kCommutatorThreshold ? kVerdictPassed : kVerdictViolated);
  out.caveat = std::string(kGmcCaveat);
  return out;
}

FixedPointReport gmc_fixed_point(const DensityMatrix& rho, const CutMeasurement& m) {
  if (rho.dims() != m.cut().dims()) throw Error(ErrorCode::DimensionMismatch, "measurement defined on other dims");
  const Matrix permuted = permute_to_cut(rho, m.cut()).matrix();
  const Matrix frame = m.product_frame();
  const Matrix dephased = dephase(permuted, frame);

  FixedPointReport out;
  out.distance = (permuted - dephased).norm();
  // For P = |u><u|: ||[rho, P]||_F = sqrt(2) ||w||, w = rho u - <u|rho u> u.
  // Forming w directly avoids the cancellation in <u|rho^2|u> - <u|rho|u>^2.
  const Matrix ru = permuted * frame;
  for (Eigen::Index j = 0; j < frame.cols(); ++j) {
    const Vector w = ru.col(j) - frame.col(j).dot(ru.col(j)) * frame.col(j);
    out.max_commutator = std::max(out.max_commutator, std::sqrt(2.0) * w.norm());
  }
  out.certified = out.distance <= kFixedPointThreshold;
  return out;
}

}  // namespace qcorr
