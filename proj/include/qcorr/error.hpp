#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qcorr {

enum class ErrorCode {
  NotHermitian,
  NotPositive,
  TraceMismatch,
  DimensionMismatch,
  EmptyKeep,
  FullKeep,
  IndexOutOfRange,
  BadRank,
  TooFewParties,
  NotBipartite,
  BadExponent,
  NotNormalized,
  UnknownName,
  BadParams,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Library-wide exception. `magnitude()` carries the measured violation for
/// validation failures (e.g. the most negative eigenvalue for NotPositive),
/// and is 0 otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, double magnitude = 0.0)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        magnitude_(magnitude) {}

  ErrorCode code() const noexcept { return code_; }
  double magnitude() const noexcept { return magnitude_; }

  /// True for the errors raised by state validation.
  bool is_validation() const noexcept {
    return code_ == ErrorCode::NotHermitian || code_ == ErrorCode::NotPositive ||
           code_ == ErrorCode::TraceMismatch || code_ == ErrorCode::NotNormalized;
  }

 private:
  ErrorCode code_;
  double magnitude_;
};

}  // namespace qcorr
