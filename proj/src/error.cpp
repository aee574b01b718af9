#include "cohdist/error.hpp"

namespace cohdist {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidShape: return "InvalidShape";
    case ErrorKind::InvalidDistribution: return "InvalidDistribution";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::TraceNotOne: return "TraceNotOne";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::InvalidPermutation: return "InvalidPermutation";
    case ErrorKind::CliqueVerificationFailed: return "CliqueVerificationFailed";
    case ErrorKind::NotPure: return "NotPure";
    case ErrorKind::ZeroWeight: return "ZeroWeight";
    case ErrorKind::NotDistillable: return "NotDistillable";
    case ErrorKind::DimensionOverflow: return "DimensionOverflow";
    case ErrorKind::NotMajorized: return "NotMajorized";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotTransformable: return "NotTransformable";
    case ErrorKind::NotStrictlyIncoherent: return "NotStrictlyIncoherent";
    case ErrorKind::IncompleteChannel: return "IncompleteChannel";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace cohdist
