#pragma once

// Derivative-free multistart minimization over products of unitary frames.
// Each frame is parameterized around its start point by an off-diagonal
// anti-Hermitian generator, so every iterate stays exactly unitary.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qcorr/qstate.hpp"

namespace qcorr {

/// splitmix64 mix of (seed, a, b, c); independent substreams per
/// (partition, start, block) so results do not depend on scheduling.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

/// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = hardware
/// concurrency). Each index is handled exactly once.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

struct LocalSearchResult {
  RealVector x;
  double value = 0.0;
  int evaluations = 0;
  int iterations = 0;
  bool converged = false;
};

/// Nelder-Mead simplex from x0 with an axis-aligned initial simplex of size
/// `step`. Stops when the spread of simplex values drops to `ftol` or after
/// `max_iterations` iterations.
LocalSearchResult nelder_mead(const std::function<double(const RealVector&)>& f, const RealVector& x0, double step,
                              int max_iterations, double ftol);

/// Number of real parameters of the frame chart on a d-dimensional block.
inline int chart_size(int d) { return d * (d - 1); }

/// exp(A) for the anti-Hermitian A whose strictly upper entries are
/// params[2m] + i params[2m+1] (row-major) and whose diagonal is zero.
Matrix unitary_from_params(std::span<const double> params, int d);

/// Which side the chart multiplies. Right: frame = B0 exp(A), so column
/// phases (irrelevant for projectors) are the excluded directions. Left:
/// frame = exp(A) B0, so row phases are excluded.
enum class ChartSide { Right, Left };

struct FrameSearchSettings {
  int max_iterations = 2000;
  double ftol = 1e-8;
  double step = 0.1;
  int threads = 1;
  ChartSide side = ChartSide::Right;
};

using FrameObjective = std::function<double(std::span<const Matrix>)>;

struct FrameSearchResult {
  std::vector<Matrix> best_frames;
  double best_value = 0.0;
  std::size_t best_start = 0;
  std::vector<double> per_start_values;
  /// Final frames of every start, in start order.
  std::vector<std::vector<Matrix>> per_start_frames;
  bool converged = false;
  long evaluations = 0;
};

/// Minimizes f over the frames from every start (a start is one unitary per
/// frame slot). Each local search re-centres its chart at the incumbent and
/// restarts the simplex until a restart improves by less than ftol or the
/// iteration budget is spent.
FrameSearchResult minimize_over_frames(const FrameObjective& f, const std::vector<std::vector<Matrix>>& starts,
                                       const FrameSearchSettings& settings);

}  // namespace qcorr
