#include "qcorr/correlations.hpp"

#include <limits>

namespace qcorr {

void OptimizerConfig::validate() const {
  if (n_random_starts < 1) throw Error(ErrorCode::BadParams, "n_random_starts must be >= 1");
  if (!(ftol > 0.0)) throw Error(ErrorCode::BadParams, "ftol must be > 0");
  if (!(step > 0.0)) throw Error(ErrorCode::BadParams, "step must be > 0");
  if (max_iterations < 1) throw Error(ErrorCode::BadParams, "max_iterations must be >= 1");
}

double clamp_tiny_negative(double raw) { return (raw < 0.0 && raw >= -kNegativeClamp) ? 0.0 : raw; }

namespace {

FrameSearchSettings search_settings(const OptimizerConfig& cfg) {
  FrameSearchSettings s;
  s.max_iterations = cfg.max_iterations;
  s.ftol = cfg.ftol;
  s.step = cfg.step;
  s.threads = cfg.threads;
  s.side = ChartSide::Right;
  return s;
}

// -- block parameterization --------------------------------------------------

/// Dimensions of the frame slots that make up one block's basis.
Dims slot_dims(const Dims& block_dims, BasisMode mode) {
  return mode == BasisMode::PerSite ? block_dims : Dims{total_dim(block_dims)};
}

Matrix assemble(std::span<const Matrix> slots) {
  Matrix out = slots.front();
  for (std::size_t i = 1; i < slots.size(); ++i) out = kron(out, slots[i]);
  return out;
}

/// Deterministic start frames for one block: canonical bases and the
/// eigenbasis of the block marginal (per site in PerSite mode).
std::vector<std::vector<Matrix>> canonical_block_starts(const Matrix& block_state, const Dims& block_dims,
                                                        BasisMode mode) {
  std::vector<std::vector<Matrix>> out;
  if (mode == BasisMode::PerCut) {
    const int d = total_dim(block_dims);
    for (const auto& b : canonical_bases(d)) out.push_back({b.vectors()});
    out.push_back({ProjectiveBasis::eigenbasis(block_state).vectors()});
    return out;
  }
  std::vector<Matrix> comp;
  std::vector<Matrix> four;
  std::vector<Matrix> eig;
  for (std::size_t i = 0; i < block_dims.size(); ++i) {
    const int d = block_dims[i];
    comp.push_back(ProjectiveBasis::computational(d).vectors());
    four.push_back(ProjectiveBasis::fourier(d).vectors());
    const Subset site{static_cast<int>(i)};
    const Matrix marginal = block_dims.size() == 1 ? block_state : reduce(block_state, block_dims, site);
    eig.push_back(ProjectiveBasis::eigenbasis(marginal).vectors());
  }
  out.push_back(std::move(comp));
  out.push_back(std::move(four));
  out.push_back(std::move(eig));
  return out;
}

std::vector<Matrix> random_block_start(const Dims& block_dims, BasisMode mode, std::uint64_t seed,
                                       std::uint64_t partition_index, std::uint64_t start, std::uint64_t block) {
  std::vector<Matrix> out;
  const Dims slots = slot_dims(block_dims, mode);
  for (std::size_t k = 0; k < slots.size(); ++k) {
    const auto s = derive_seed(seed, partition_index, start, block * 64 + k);
    out.push_back(random_basis(slots[k], s).vectors());
  }
  return out;
}

std::vector<Matrix> concat(std::vector<Matrix> a, const std::vector<Matrix>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// -- fast gamma-discord evaluation ------------------------------------------

/// Evaluates the bracket from outcome probabilities: with both blocks
/// measured it equals I(rho) - I(p) where p is the joint outcome
/// distribution. With only gamma measured it is
/// sum_k p_k S(rho_{g'|k}) - S(rho) + S(rho_g).
class CutEvaluator {
 public:
  CutEvaluator(const DensityMatrix& rho, const Partition& cut, MeasurementSides sides)
      : rho_(permute_to_cut(rho, cut).matrix()), dg_(cut.d_gamma()), dgp_(cut.d_gamma_prime()), sides_(sides) {
    s_rho_ = von_neumann_entropy(rho_);
    const Matrix rg = reduce(rho_, Dims{dg_, dgp_}, Subset{0});
    const Matrix rgp = reduce(rho_, Dims{dg_, dgp_}, Subset{1});
    s_g_ = von_neumann_entropy(rg);
    s_gp_ = von_neumann_entropy(rgp);
  }

  double mutual_information() const { return s_g_ + s_gp_ - s_rho_; }

  double operator()(const Matrix& bg, const Matrix& bgp) const {
    return sides_ == MeasurementSides::Both ? two_sided(bg, bgp) : gamma_only(bg);
  }

 private:
  double two_sided(const Matrix& bg, const Matrix& bgp) const {
    const Matrix u = kron(bg, bgp);
    const Matrix x = rho_ * u;
    const RealVector p = (u.conjugate().cwiseProduct(x)).colwise().sum().real();
    double h = 0.0;
    std::vector<double> pg(static_cast<std::size_t>(dg_), 0.0);
    std::vector<double> pgp(static_cast<std::size_t>(dgp_), 0.0);
    for (int k = 0; k < dg_; ++k) {
      for (int kp = 0; kp < dgp_; ++kp) {
        const double v = p(k * dgp_ + kp);
        h += entropy_term(v);
        pg[k] += v;
        pgp[kp] += v;
      }
    }
    const double classical_mi = shannon_entropy(pg) + shannon_entropy(pgp) - h;
    return mutual_information() - classical_mi;
  }

  double gamma_only(const Matrix& bg) const {
    const Matrix id = Matrix::Identity(dgp_, dgp_);
    double conditional = 0.0;
    for (int k = 0; k < dg_; ++k) {
      const Matrix kk = kron(bg.col(k).adjoint(), id);
      const Matrix sigma = kk * rho_ * kk.adjoint();
      const double pk = sigma.trace().real();
      if (pk <= kNegligibleOutcome) continue;
      conditional += pk * von_neumann_entropy(Matrix(sigma / pk));
    }
    return conditional - s_rho_ + s_g_;
  }

  Matrix rho_;
  int dg_;
  int dgp_;
  MeasurementSides sides_;
  double s_rho_ = 0.0;
  double s_g_ = 0.0;
  double s_gp_ = 0.0;
};

/// S(rho_keep) - sum_j p_j S(rho_j), measuring the second block of a
/// two-block operator.
double measurement_information(const Matrix& rho2, int d_keep, int d_meas, const Matrix& basis, double s_keep) {
  const Matrix id = Matrix::Identity(d_keep, d_keep);
  double conditional = 0.0;
  for (int j = 0; j < d_meas; ++j) {
    const Matrix k = kron(id, basis.col(j).adjoint());
    const Matrix sigma = k * rho2 * k.adjoint();
    const double p = sigma.trace().real();
    if (p <= kNegligibleOutcome) continue;
    conditional += p * von_neumann_entropy(Matrix(sigma / p));
  }
  return s_keep - conditional;
}

Partition two_party_cut(const DensityMatrix& rho) {
  if (rho.parties() != 2) {
    throw Error(ErrorCode::NotBipartite, "expected 2 parties, got " + std::to_string(rho.parties()));
  }
  return Partition::make(rho.dims(), Subset{0});
}

}  // namespace

// -- one-sided measures ------------------------------------------------------

DiscordResult classical_correlation(const DensityMatrix& rho, const Partition& cut, Side measured,
                                    const OptimizerConfig& cfg) {
  cfg.validate();
  if (rho.dims() != cut.dims()) throw Error(ErrorCode::DimensionMismatch, "cut defined on other dims");

  const bool meas_gp = measured == Side::GammaPrime;
  Subset order = meas_gp ? cut.gamma() : cut.gamma_prime();
  const Subset& meas_parties = meas_gp ? cut.gamma_prime() : cut.gamma();
  order.insert(order.end(), meas_parties.begin(), meas_parties.end());

  const Matrix rho2 = permute_subsystems(rho.matrix(), rho.dims(), order);
  const int d_meas = meas_gp ? cut.d_gamma_prime() : cut.d_gamma();
  const int d_keep = rho.dim() / d_meas;
  const Dims& meas_dims = meas_gp ? cut.dims_gamma_prime() : cut.dims_gamma();
  const Dims two{d_keep, d_meas};
  const double s_keep = von_neumann_entropy(reduce(rho2, two, Subset{0}));
  const Matrix meas_state = reduce(rho2, two, Subset{1});

  std::vector<std::vector<Matrix>> starts;
  if (cfg.include_canonical_starts) starts = canonical_block_starts(meas_state, meas_dims, cfg.mode);
  for (int s = 0; s < cfg.n_random_starts; ++s) {
    starts.push_back(random_block_start(meas_dims, cfg.mode, cfg.seed, 0, static_cast<std::uint64_t>(s), 0));
  }

  const FrameObjective objective = [&](std::span<const Matrix> frames) {
    return -measurement_information(rho2, d_keep, d_meas, assemble(frames), s_keep);
  };
  const FrameSearchResult r = minimize_over_frames(objective, starts, search_settings(cfg));

  DiscordResult out;
  out.raw_value = -r.best_value;
  out.value = out.raw_value;
  for (double v : r.per_start_values) out.per_start_values.push_back(-v);
  out.argmin_basis = ProjectiveBasis::from_unitary(assemble(r.best_frames));
  out.converged = r.converged;
  out.evaluations = r.evaluations;
  return out;
}

DiscordResult classical_correlation(const DensityMatrix& rho, Side measured, const OptimizerConfig& cfg) {
  return classical_correlation(rho, two_party_cut(rho), measured, cfg);
}

DiscordResult original_discord(const DensityMatrix& rho, const Partition& cut, Side measured,
                               const OptimizerConfig& cfg) {
  DiscordResult q = classical_correlation(rho, cut, measured, cfg);
  const double mi = mutual_information(rho, cut);
  DiscordResult out = q;
  out.raw_value = mi - q.raw_value;
  out.value = clamp_tiny_negative(out.raw_value);
  out.per_start_values.clear();
  for (double v : q.per_start_values) out.per_start_values.push_back(mi - v);
  return out;
}

DiscordResult original_discord(const DensityMatrix& rho, Side measured, const OptimizerConfig& cfg) {
  return original_discord(rho, two_party_cut(rho), measured, cfg);
}

// -- gamma-discord -----------------------------------------------------------

double gamma_discord_objective(const DensityMatrix& rho, const CutMeasurement& m, MeasurementSides sides) {
  const Partition& cut = m.cut();
  if (rho.dims() != cut.dims()) throw Error(ErrorCode::DimensionMismatch, "measurement defined on other dims");
  const DensityMatrix rg = partial_trace(rho, cut.gamma());
  const DensityMatrix rgp = partial_trace(rho, cut.gamma_prime());

  const DensityMatrix dephased =
      sides == MeasurementSides::Both ? dephase_cut(rho, m) : dephase_block(rho, cut.gamma(), m.basis_gamma());
  const double whole = von_neumann_entropy(dephased) - von_neumann_entropy(rho);
  const double block_g = von_neumann_entropy(dephase(rg, m.basis_gamma())) - von_neumann_entropy(rg);
  const double block_gp = sides == MeasurementSides::Both
                              ? von_neumann_entropy(dephase(rgp, m.basis_gamma_prime())) - von_neumann_entropy(rgp)
                              : 0.0;
  return whole - block_g - block_gp;
}

double gamma_discord_objective_direct(const DensityMatrix& rho, const CutMeasurement& m, MeasurementSides sides) {
  const Partition& cut = m.cut();
  if (rho.dims() != cut.dims()) throw Error(ErrorCode::DimensionMismatch, "measurement defined on other dims");
  const DensityMatrix rg = partial_trace(rho, cut.gamma());
  const DensityMatrix rgp = partial_trace(rho, cut.gamma_prime());

  const DensityMatrix dephased =
      sides == MeasurementSides::Both ? dephase_cut(rho, m) : dephase_block(rho, cut.gamma(), m.basis_gamma());
  const double whole = relative_entropy(rho, dephased);
  const double block_g = relative_entropy(rg, dephase(rg, m.basis_gamma()));
  const double block_gp = sides == MeasurementSides::Both ? relative_entropy(rgp, dephase(rgp, m.basis_gamma_prime()))
                                                          : 0.0;
  return whole - block_g - block_gp;
}

DiscordResult gamma_discord(const DensityMatrix& rho, const Partition& cut, const OptimizerConfig& cfg,
                            std::uint64_t partition_index) {
  cfg.validate();
  if (rho.dims() != cut.dims()) throw Error(ErrorCode::DimensionMismatch, "cut defined on other dims");

  const CutEvaluator eval(rho, cut, cfg.sides);
  const bool both = cfg.sides == MeasurementSides::Both;
  const std::size_t g_slots = slot_dims(cut.dims_gamma(), cfg.mode).size();

  std::vector<std::vector<Matrix>> starts;
  if (cfg.include_canonical_starts) {
    const Matrix rg = reduce(rho.matrix(), rho.dims(), cut.gamma());
    const auto g_opts = canonical_block_starts(rg, cut.dims_gamma(), cfg.mode);
    if (both) {
      const Matrix rgp = reduce(rho.matrix(), rho.dims(), cut.gamma_prime());
      const auto gp_opts = canonical_block_starts(rgp, cut.dims_gamma_prime(), cfg.mode);
      for (const auto& a : g_opts) {
        for (const auto& b : gp_opts) starts.push_back(concat(a, b));
      }
    } else {
      starts = g_opts;
    }
  }
  for (int s = 0; s < cfg.n_random_starts; ++s) {
    const auto si = static_cast<std::uint64_t>(s);
    auto frames = random_block_start(cut.dims_gamma(), cfg.mode, cfg.seed, partition_index, si, 0);
    if (both) frames = concat(std::move(frames), random_block_start(cut.dims_gamma_prime(), cfg.mode, cfg.seed,
                                                                    partition_index, si, 1));
    starts.push_back(std::move(frames));
  }

  const Matrix id_gp = Matrix::Identity(cut.d_gamma_prime(), cut.d_gamma_prime());
  auto split = [&](std::span<const Matrix> frames) {
    const Matrix bg = assemble(frames.subspan(0, g_slots));
    const Matrix bgp = both ? assemble(frames.subspan(g_slots)) : id_gp;
    return std::pair{bg, bgp};
  };
  const FrameObjective objective = [&](std::span<const Matrix> frames) {
    const auto [bg, bgp] = split(frames);
    return eval(bg, bgp);
  };
  const FrameSearchResult r = minimize_over_frames(objective, starts, search_settings(cfg));

  DiscordResult out;
  out.raw_value = r.best_value;
  out.value = clamp_tiny_negative(r.best_value);
  out.per_start_values = r.per_start_values;
  // Every measurement scores zero on a state that is a product across the
  // cut, so among near-ties report the one that disturbs rho least.
  const Matrix permuted = permute_to_cut(rho, cut).matrix();
  std::size_t pick = r.best_start;
  double least = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < r.per_start_values.size(); ++i) {
    if (r.per_start_values[i] > r.best_value + kTieTolerance) continue;
    const auto [tg, tgp] = split(r.per_start_frames[i]);
    const double disturbance = (permuted - dephase(permuted, kron(tg, tgp))).norm();
    if (disturbance < least - kTieTolerance) {
      least = disturbance;
      pick = i;
    }
  }
  const auto [bg, bgp] = split(r.per_start_frames[pick]);
  out.argmin.emplace(cut, ProjectiveBasis::from_unitary(bg), ProjectiveBasis::from_unitary(bgp));
  out.converged = r.converged;
  out.evaluations = r.evaluations;
  return out;
}

DiscordResult symmetric_discord(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  OptimizerConfig two_sided = cfg;
  two_sided.sides = MeasurementSides::Both;
  return gamma_discord(rho, two_party_cut(rho), two_sided);
}

GenuineDiscordResult genuine_discord(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  GenuineDiscordResult out;
  out.value = std::numeric_limits<double>::infinity();
  const auto cuts = enumerate_bipartitions(rho.dims());
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    DiscordResult r = gamma_discord(rho, cuts[i], cfg, i);
    if (r.raw_value < out.value) {
      out.value = r.raw_value;
      out.best = i;
    }
    out.per_partition.push_back(PartitionDiscord{cuts[i], std::move(r)});
  }
  out.value = out.per_partition[out.best].result.value;
  return out;
}

}  // namespace qcorr
