#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qcorr/qstate.hpp"

namespace qcorr {

/// A bipartition gamma | gamma' of the parties, in canonical form: party 0
/// always belongs to gamma. Swapping the two sides leaves every measure in
/// this library unchanged, so only canonical cuts are enumerated.
class Partition {
 public:
  /// Canonicalizes: if party 0 is not in `gamma`, the complement is used.
  /// Throws IndexOutOfRange for bad or duplicate indices and BadParams when
  /// either side would be empty.
  static Partition make(const Dims& dims, Subset gamma);

  /// Parses the 1-based "1|23" syntax. Both sides must be listed and
  /// together cover every party exactly once.
  static Partition parse(std::string_view text, const Dims& dims);

  const Dims& dims() const noexcept { return dims_; }
  const Subset& gamma() const noexcept { return gamma_; }
  const Subset& gamma_prime() const noexcept { return gamma_prime_; }
  const Dims& dims_gamma() const noexcept { return dims_gamma_; }
  const Dims& dims_gamma_prime() const noexcept { return dims_gamma_prime_; }
  int d_gamma() const noexcept { return d_gamma_; }
  int d_gamma_prime() const noexcept { return d_gamma_prime_; }
  int parties() const noexcept { return static_cast<int>(dims_.size()); }

  /// gamma followed by gamma'; the subsystem order of permute_to_cut.
  Subset order() const;
  /// Inverse of order().
  Subset inverse_order() const;

  std::string to_string() const;

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.dims_ == b.dims_ && a.gamma_ == b.gamma_;
  }

 private:
  Partition() = default;

  Dims dims_;
  Subset gamma_;
  Subset gamma_prime_;
  Dims dims_gamma_;
  Dims dims_gamma_prime_;
  int d_gamma_ = 1;
  int d_gamma_prime_ = 1;
};

/// All 2^(N-1) - 1 canonical bipartitions, ordered lexicographically by
/// gamma. Throws TooFewParties for N < 2.
std::vector<Partition> enumerate_bipartitions(const Dims& dims);

/// Reorders subsystems to (gamma, gamma') so the cut is a Kronecker split
/// with the gamma block leading.
DensityMatrix permute_to_cut(const DensityMatrix& rho, const Partition& cut);
/// Inverse of permute_to_cut.
DensityMatrix restore_from_cut(const DensityMatrix& permuted, const Partition& cut);

inline double mutual_information(const DensityMatrix& rho, const Partition& cut) {
  return mutual_information(rho, cut.gamma());
}

}  // namespace qcorr
