#pragma once

// Discord-type measures, each a minimization over projective measurement
// bases: one-sided discord, the two-sided symmetric discord, the gamma-discord
// of a cut and the genuine multipartite discord (minimum over cuts).

#include <cstdint>
#include <optional>
#include <vector>

#include "qcorr/measurements.hpp"
#include "qcorr/optimizer.hpp"
#include "qcorr/partitions.hpp"
#include "qcorr/qstate.hpp"

namespace qcorr {

/// Which blocks of a cut are measured in the gamma-discord.
enum class MeasurementSides {
  Both,       ///< Pi_gamma^k (x) Pi_gamma'^k' (default)
  GammaOnly,  ///< Pi_gamma^k (x) I_gamma'
};

/// How a block basis is parameterized.
enum class BasisMode {
  PerCut,   ///< any orthonormal basis of the whole block (default)
  PerSite,  ///< tensor product of single-party bases
};

struct OptimizerConfig {
  int n_random_starts = 24;
  bool include_canonical_starts = true;
  int max_iterations = 2000;
  double ftol = 1e-8;
  double step = 0.1;
  std::uint64_t seed = 42;
  MeasurementSides sides = MeasurementSides::Both;
  BasisMode mode = BasisMode::PerCut;
  /// Worker threads for the restarts; 0 uses hardware concurrency. Results
  /// do not depend on this.
  int threads = 1;

  /// Throws BadParams unless n_random_starts >= 1, ftol > 0, step > 0 and
  /// max_iterations >= 1.
  void validate() const;
};

/// Raw values in [-1e-9, 0) are reported as 0.
inline constexpr double kNegativeClamp = 1e-9;
double clamp_tiny_negative(double raw);

struct DiscordResult {
  /// Reported value (tiny negatives clamped).
  double value = 0.0;
  double raw_value = 0.0;
  /// Best measurement for two-block measures.
  std::optional<CutMeasurement> argmin;
  /// Best basis of the measured block for one-sided measures.
  std::optional<ProjectiveBasis> argmin_basis;
  std::vector<double> per_start_values;
  bool converged = false;
  long evaluations = 0;
};

enum class Side { Gamma, GammaPrime };

/// sup over bases of S(rho_unmeasured) - sum_j p_j S(rho_j), measuring the
/// given side of the cut. The result's value is the supremum estimate.
DiscordResult classical_correlation(const DensityMatrix& rho, const Partition& cut, Side measured,
                                    const OptimizerConfig& cfg);
/// Two-party form; measured side Gamma is party 1. Throws NotBipartite.
DiscordResult classical_correlation(const DensityMatrix& rho, Side measured, const OptimizerConfig& cfg);

/// Mutual information minus classical correlation.
DiscordResult original_discord(const DensityMatrix& rho, const Partition& cut, Side measured,
                               const OptimizerConfig& cfg);
DiscordResult original_discord(const DensityMatrix& rho, Side measured, const OptimizerConfig& cfg);

/// Two-sided discord of a two-party state. Throws NotBipartite.
DiscordResult symmetric_discord(const DensityMatrix& rho, const OptimizerConfig& cfg);

/// The gamma-discord bracket for a fixed measurement,
///   [S(Phi^g rho) - S(rho)] - [S(Phi_g rho_g) - S(rho_g)] - [S(Phi_g' rho_g') - S(rho_g')],
/// each term evaluated as an entropy difference. With GammaOnly the gamma'
/// basis is ignored and its bracket is zero.
double gamma_discord_objective(const DensityMatrix& rho, const CutMeasurement& m,
                               MeasurementSides sides = MeasurementSides::Both);
/// Same bracket from three relative entropies S(rho||Phi rho).
double gamma_discord_objective_direct(const DensityMatrix& rho, const CutMeasurement& m,
                                      MeasurementSides sides = MeasurementSides::Both);

/// Starts whose values lie within this of the best count as ties.
inline constexpr double kTieTolerance = 1e-9;

/// Multistart minimization of the bracket over the bases of both blocks.
/// `partition_index` selects the random substream. Among tied starts the
/// argmin is the measurement with the smallest ||rho - Phi(rho)||_F.
DiscordResult gamma_discord(const DensityMatrix& rho, const Partition& cut, const OptimizerConfig& cfg,
                            std::uint64_t partition_index = 0);

struct PartitionDiscord {
  Partition cut;
  DiscordResult result;
};

struct GenuineDiscordResult {
  double value = 0.0;
  std::size_t best = 0;
  /// One entry per canonical bipartition, in enumeration order.
  std::vector<PartitionDiscord> per_partition;

  const Partition& best_partition() const { return per_partition.at(best).cut; }
};

GenuineDiscordResult genuine_discord(const DensityMatrix& rho, const OptimizerConfig& cfg);

}  // namespace qcorr
