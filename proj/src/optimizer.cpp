#include "qcorr/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <thread>

namespace qcorr {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  return splitmix64(h ^ c);
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                    : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < n; i = next++) fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

LocalSearchResult nelder_mead(const std::function<double(const RealVector&)>& f, const RealVector& x0, double step,
                              int max_iterations, double ftol) {
  const Eigen::Index n = x0.size();
  LocalSearchResult out;
  if (n == 0) {
    out.x = x0;
    out.value = f(x0);
    out.evaluations = 1;
    out.converged = true;
    return out;
  }

  std::vector<RealVector> pts(static_cast<std::size_t>(n + 1), x0);
  std::vector<double> vals(static_cast<std::size_t>(n + 1));
  for (Eigen::Index i = 0; i < n; ++i) pts[static_cast<std::size_t>(i + 1)](i) += step;
  for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = f(pts[i]);
  int evals = static_cast<int>(n + 1);

  std::vector<std::size_t> idx(pts.size());
  int iter = 0;
  bool converged = false;
  for (;;) {
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = idx.front();
    const std::size_t worst = idx.back();
    const std::size_t second = idx[idx.size() - 2];
    if (vals[worst] - vals[best] <= ftol) {
      converged = true;
      break;
    }
    if (iter >= max_iterations) break;
    ++iter;

    RealVector centroid = RealVector::Zero(n);
    for (std::size_t k = 0; k + 1 < idx.size(); ++k) centroid += pts[idx[k]];
    centroid /= static_cast<double>(n);

    const RealVector xr = centroid + (centroid - pts[worst]);
    const double fr = f(xr);
    ++evals;
    if (fr < vals[best]) {
      const RealVector xe = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = f(xe);
      ++evals;
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const RealVector xc = outside ? RealVector(centroid + 0.5 * (xr - centroid))
                                  : RealVector(centroid + 0.5 * (pts[worst] - centroid));
    const double fc = f(xc);
    ++evals;
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = xc;
      vals[worst] = fc;
      continue;
    }
    // shrink toward the best vertex
    for (std::size_t k = 1; k < idx.size(); ++k) {
      const std::size_t i = idx[k];
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      vals[i] = f(pts[i]);
      ++evals;
    }
  }

  const auto best_it = std::min_element(vals.begin(), vals.end());
  const std::size_t b = static_cast<std::size_t>(best_it - vals.begin());
  out.x = pts[b];
  out.value = vals[b];
  out.evaluations = evals;
  out.iterations = iter;
  out.converged = converged;
  return out;
}

Matrix unitary_from_params(std::span<const double> params, int d) {
  // H = -iA is Hermitian; exp(A) = exp(iH) = V exp(i lambda) V^dagger.
  Matrix h = Matrix::Zero(d, d);
  std::size_t m = 0;
  for (int r = 0; r < d; ++r) {
    for (int c = r + 1; c < d; ++c) {
      const Complex a(params[m], params[m + 1]);
      m += 2;
      h(r, c) = Complex(0.0, -1.0) * a;
      h(c, r) = std::conj(h(r, c));
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Vector phases(d);
  for (int k = 0; k < d; ++k) phases(k) = std::polar(1.0, es.eigenvalues()(k));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

std::vector<Matrix> frames_at(const std::vector<Matrix>& centres, const RealVector& x, ChartSide side) {
  std::vector<Matrix> frames;
  frames.reserve(centres.size());
  Eigen::Index offset = 0;
  for (const Matrix& c : centres) {
    const int d = static_cast<int>(c.rows());
    const int k = chart_size(d);
    const Matrix u = unitary_from_params(std::span<const double>(x.data() + offset, static_cast<std::size_t>(k)), d);
    frames.push_back(side == ChartSide::Right ? Matrix(c * u) : Matrix(u * c));
    offset += k;
  }
  return frames;
}

struct StartOutcome {
  std::vector<Matrix> frames;
  double value = std::numeric_limits<double>::infinity();
  bool converged = false;
  long evaluations = 0;
};

StartOutcome run_start(const FrameObjective& f, std::vector<Matrix> centres, const FrameSearchSettings& s) {
  int params = 0;
  for (const Matrix& c : centres) params += chart_size(static_cast<int>(c.rows()));

  StartOutcome out;
  out.frames = centres;
  out.value = f(centres);
  out.evaluations = 1;

  int budget = s.max_iterations;
  while (budget > 0) {
    auto local = [&](const RealVector& x) {
      const auto frames = frames_at(centres, x, s.side);
      return f(frames);
    };
    const LocalSearchResult r = nelder_mead(local, RealVector::Zero(params), s.step, budget, s.ftol);
    out.evaluations += r.evaluations;
    budget -= std::max(r.iterations, 1);
    out.converged = r.converged;
    // Gains within ftol are rounding noise on flat objectives; keep the centre.
    if (out.value - r.value <= s.ftol) break;
    centres = frames_at(centres, r.x, s.side);
    out.frames = centres;
    out.value = r.value;
    if (!r.converged) break;
  }
  return out;
}

}  // namespace

FrameSearchResult minimize_over_frames(const FrameObjective& f, const std::vector<std::vector<Matrix>>& starts,
                                       const FrameSearchSettings& settings) {
  std::vector<StartOutcome> outcomes(starts.size());
  parallel_for(starts.size(), settings.threads, [&](std::size_t i) { outcomes[i] = run_start(f, starts[i], settings); });

  FrameSearchResult result;
  result.best_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    result.per_start_values.push_back(outcomes[i].value);
    result.per_start_frames.push_back(outcomes[i].frames);
    result.evaluations += outcomes[i].evaluations;
    if (outcomes[i].value < result.best_value) {
      result.best_value = outcomes[i].value;
      result.best_start = i;
    }
  }
  if (!outcomes.empty()) {
    result.best_frames = outcomes[result.best_start].frames;
    result.converged = outcomes[result.best_start].converged;
  }
  return result;
}

}  // namespace qcorr
