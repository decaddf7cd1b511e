#include "qcorr/partitions.hpp"

#include <algorithm>

namespace qcorr {

Partition Partition::make(const Dims& dims, Subset gamma) {
  const int n = static_cast<int>(dims.size());
  std::sort(gamma.begin(), gamma.end());
  for (int k : gamma) {
    if (k < 0 || k >= n) throw Error(ErrorCode::IndexOutOfRange, "party index " + std::to_string(k + 1));
  }
  if (std::adjacent_find(gamma.begin(), gamma.end()) != gamma.end()) {
    throw Error(ErrorCode::IndexOutOfRange, "duplicate party index in cut");
  }
  Subset rest = complement(gamma, n);
  if (gamma.empty() || rest.empty()) throw Error(ErrorCode::BadParams, "both sides of a cut must be nonempty");
  if (gamma.front() != 0) std::swap(gamma, rest);

  Partition p;
  p.dims_ = dims;
  p.gamma_ = std::move(gamma);
  p.gamma_prime_ = std::move(rest);
  for (int k : p.gamma_) p.dims_gamma_.push_back(dims[k]);
  for (int k : p.gamma_prime_) p.dims_gamma_prime_.push_back(dims[k]);
  p.d_gamma_ = total_dim(p.dims_gamma_);
  p.d_gamma_prime_ = total_dim(p.dims_gamma_prime_);
  return p;
}

Partition Partition::parse(std::string_view text, const Dims& dims) {
  const auto bar = text.find('|');
  if (bar == std::string_view::npos || text.find('|', bar + 1) != std::string_view::npos) {
    throw Error(ErrorCode::ParseError, "cut '" + std::string(text) + "' needs exactly one '|'");
  }
  const int n = static_cast<int>(dims.size());
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  Subset gamma;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i == bar) continue;
    const char c = text[i];
    if (c < '0' || c > '9') throw Error(ErrorCode::ParseError, "unexpected character in cut '" + std::string(text) + "'");
    const int k = c - '1';
    if (k < 0 || k >= n) {
      throw Error(ErrorCode::IndexOutOfRange, "party " + std::string(1, c) + " out of range 1.." + std::to_string(n));
    }
    if (seen[k]++) throw Error(ErrorCode::ParseError, "party " + std::string(1, c) + " listed twice");
    if (i < bar) gamma.push_back(k);
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw Error(ErrorCode::ParseError, "cut '" + std::string(text) + "' does not list every party");
  }
  if (bar == 0 || bar + 1 == text.size()) throw Error(ErrorCode::ParseError, "empty side in cut");
  return make(dims, std::move(gamma));
}

Subset Partition::order() const {
  Subset o = gamma_;
  o.insert(o.end(), gamma_prime_.begin(), gamma_prime_.end());
  return o;
}

Subset Partition::inverse_order() const {
  const Subset o = order();
  Subset inv(o.size());
  for (std::size_t i = 0; i < o.size(); ++i) inv[static_cast<std::size_t>(o[i])] = static_cast<int>(i);
  return inv;
}

std::string Partition::to_string() const {
  std::string s;
  for (int k : gamma_) s += std::to_string(k + 1);
  s += '|';
  for (int k : gamma_prime_) s += std::to_string(k + 1);
  return s;
}

std::vector<Partition> enumerate_bipartitions(const Dims& dims) {
  const int n = static_cast<int>(dims.size());
  if (n < 2) throw Error(ErrorCode::TooFewParties, "need at least 2 parties, got " + std::to_string(n));
  std::vector<Subset> gammas;
  // Party 0 is always in gamma; the other parties are chosen by the bits of mask.
  const unsigned full = (1u << (n - 1)) - 1u;
  for (unsigned mask = 0; mask < full; ++mask) {
    Subset g{0};
    for (int k = 1; k < n; ++k) {
      if (mask & (1u << (k - 1))) g.push_back(k);
    }
    gammas.push_back(std::move(g));
  }
  std::sort(gammas.begin(), gammas.end());
  std::vector<Partition> out;
  out.reserve(gammas.size());
  for (auto& g : gammas) out.push_back(Partition::make(dims, std::move(g)));
  return out;
}

DensityMatrix permute_to_cut(const DensityMatrix& rho, const Partition& cut) {
  if (rho.dims() != cut.dims()) throw Error(ErrorCode::DimensionMismatch, "cut defined on different dims");
  return permute_subsystems(rho, cut.order());
}

DensityMatrix restore_from_cut(const DensityMatrix& permuted, const Partition& cut) {
  Dims expected = cut.dims_gamma();
  expected.insert(expected.end(), cut.dims_gamma_prime().begin(), cut.dims_gamma_prime().end());
  if (permuted.dims() != expected) throw Error(ErrorCode::DimensionMismatch, "state is not in cut order");
  return permute_subsystems(permuted, cut.inverse_order());
}

}  // namespace qcorr
