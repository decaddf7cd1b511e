#pragma once

// Distance-based witness and concurrence measures:
//   D_p(rho, sigma) = [Tr |rho^(1/p) - sigma^(1/p)|^p]^(1/p),
//   W(rho)          = min over cuts of D_2(rho, rho_g (x) rho_g'),
// concurrence / GME-concurrence of pure states, a convex-roof upper bound for
// mixed states, and classicality checks (commutator necessary condition and
// measurement fixed points).

#include <optional>
#include <string>
#include <vector>

#include "qcorr/correlations.hpp"
#include "qcorr/measurements.hpp"
#include "qcorr/partitions.hpp"
#include "qcorr/qstate.hpp"

namespace qcorr {

struct PartitionValue {
  Partition cut;
  double value = 0.0;
};

/// Throws BadExponent for p < 1 and DimensionMismatch for unequal sizes.
double dp_distance(const Matrix& rho, const Matrix& sigma, double p);
double dp_distance(const DensityMatrix& rho, const DensityMatrix& sigma, double p);

/// sqrt(max(0, 2 - 2 Re Tr(sqrt(rho) sqrt(sigma)))).
double d2_distance(const Matrix& rho, const Matrix& sigma);
double d2_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

struct WitnessReport {
  /// D_2(rho, rho_g (x) rho_g') for every canonical cut, in enumeration order.
  std::vector<PartitionValue> per_partition;
  double value = 0.0;
  std::size_t best = 0;
  /// Set when the input is pure (purity within 1e-10 of 1): the
  /// GME-concurrence of the state vector and sqrt(2) times it. For pure
  /// states W equals the latter, not C_GME itself.
  std::optional<double> gme_concurrence;
  std::optional<double> sqrt2_gme_concurrence;

  const Partition& best_partition() const { return per_partition.at(best).cut; }
};

/// Deterministic; no optimization. Throws TooFewParties for N < 2.
WitnessReport witness_W(const DensityMatrix& rho);

/// sqrt(2 - 2 Tr rho_A^2). Throws NotBipartite.
double concurrence_pure(const PureStateVector& psi);

/// Tr(rho_g^2) of a pure state's marginal.
double marginal_purity(const PureStateVector& psi, const Partition& cut);
/// sqrt(1 - Tr rho_g^2).
double gamma_concurrence(const PureStateVector& psi, const Partition& cut);
/// Minimum of gamma_concurrence over canonical cuts.
double gme_concurrence_pure(const PureStateVector& psi);

struct BiseparabilityVerdict {
  bool biseparable = false;
  /// Cut achieving the smallest gamma-concurrence.
  Partition cut;
  double min_concurrence = 0.0;
};

BiseparabilityVerdict biseparable_pure(const PureStateVector& psi, double tol = 1e-8);

struct ConvexRoofResult {
  /// Best average sum_i p_i C_GME(psi_i) found: an upper bound on the
  /// convex roof, never the exact value.
  double value = 0.0;
  /// Average over the eigen-decomposition (the first start).
  double eigen_decomposition_value = 0.0;
  int rank = 0;
  /// Number of ensemble members of the best decomposition.
  int ensemble_size = 0;
  std::vector<double> per_start_values;
  long evaluations = 0;
  bool converged = false;
};

/// Searches decompositions psi_k = sum_i U_ki sqrt(lambda_i) e_i over the
/// eigen-ensemble, with U the first r columns of an m x m unitary,
/// m in {r, r + 2}. The eigen-decomposition is always the first start, and
/// random start s uses m = r for even s and r + 2 for odd s, so adding
/// starts can only lower the value.
ConvexRoofResult gme_concurrence_upper(const DensityMatrix& rho, const OptimizerConfig& cfg);

struct FixedPointReport {
  /// ||rho - Phi(rho)||_F
  double distance = 0.0;
  /// max over product projectors of ||[rho, Pi_j]||_F
  double max_commutator = 0.0;
  /// distance <= 1e-10
  bool certified = false;
};

inline constexpr std::string_view kVerdictPassed = "necessary-condition-passed";
inline constexpr std::string_view kVerdictViolated = "violated";
inline constexpr std::string_view kGmcCaveat =
    "necessary condition only: a vanishing commutator [rho, rho_g (x) rho_g'] does not certify a "
    "genuinely classical state; use a fixed-point check with an explicit measurement for that";
inline constexpr double kCommutatorThreshold = 1e-8;
inline constexpr double kFixedPointThreshold = 1e-10;

struct GmcCheckReport {
  /// ||[rho, rho_g (x) rho_g']||_F per canonical cut.
  std::vector<PartitionValue> commutator_norms;
  double min_norm = 0.0;
  std::size_t best = 0;
  std::string verdict;
  std::string caveat;
  std::optional<FixedPointReport> fixed_point;

  const Partition& best_partition() const { return commutator_norms.at(best).cut; }
};

GmcCheckReport gmc_commutator_check(const DensityMatrix& rho);

FixedPointReport gmc_fixed_point(const DensityMatrix& rho, const CutMeasurement& m);

}  // namespace qcorr
