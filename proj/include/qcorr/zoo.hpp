#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcorr/io.hpp"

namespace qcorr {

struct ZooParams {
  std::optional<int> n;
  std::optional<double> p;
  std::optional<Dims> dims;
  std::optional<int> rank;
  std::uint64_t seed = 42;
};

/// Named test states:
///   bell, ghz (n), w (n), product (dims), werner (p), classical-corr,
///   bell-times-zero, random-pure (dims, seed), random-mixed (dims, rank, seed).
/// Pure states are emitted as vectors. Throws UnknownName or BadParams.
StateFile zoo(std::string_view name, const ZooParams& params = {});

std::vector<std::string> zoo_names();

}  // namespace qcorr
