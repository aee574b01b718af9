#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cohdist {

enum class ErrorKind {
  InvalidShape,
  InvalidDistribution,
  NotHermitian,
  NotPSD,
  TraceNotOne,
  NotNormalized,
  InvalidPermutation,
  CliqueVerificationFailed,
  NotPure,
  ZeroWeight,
  NotDistillable,
  DimensionOverflow,
  NotMajorized,
  DimensionMismatch,
  NotTransformable,
  NotStrictlyIncoherent,
  IncompleteChannel,
  Parse,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries the violated invariant as a kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline constexpr double kDefaultTol = 1e-9;

}  // namespace cohdist
