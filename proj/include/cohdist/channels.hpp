#pragma once

#include <vector>

#include "cohdist/distillation.hpp"
#include "cohdist/matrixcore.hpp"

namespace cohdist {

inline constexpr double kCompletenessTol = 1e-9;

/// At most one entry of modulus above tol in every row and every column.
bool is_strictly_incoherent(const ComplexMatrix& k, double tol = kDefaultTol);

/// Kraus representation of a strictly incoherent operation. Operators whose
/// entries are all below tol are dropped; the rest must each be strictly
/// incoherent and satisfy sum_n K_n^dag K_n = I within completeness_tol.
class SIOChannel {
 public:
  explicit SIOChannel(std::vector<ComplexMatrix> kraus, double tol = kDefaultTol,
                      double completeness_tol = kCompletenessTol);

  static SIOChannel identity(std::size_t d);

  std::size_t dim_in() const noexcept { return static_cast<std::size_t>(kraus_.front().cols()); }
  std::size_t dim_out() const noexcept { return static_cast<std::size_t>(kraus_.front().rows()); }
  std::size_t size() const noexcept { return kraus_.size(); }
  const std::vector<ComplexMatrix>& kraus() const noexcept { return kraus_; }

  /// max |(sum K^dag K - I)_ij|
  double completeness_error() const;

 private:
  std::vector<ComplexMatrix> kraus_;
};

/// sum_n K_n rho K_n^dag, validated as a density matrix.
DensityMatrix apply(const SIOChannel& channel, const DensityMatrix& rho, double tol = kDefaultTol);

/// Kraus products {A_n B_m}: first `inner`, then `outer`.
SIOChannel compose(const SIOChannel& outer, const SIOChannel& inner, double tol = kDefaultTol,
                   double completeness_tol = 1e-8);

/// One two-level concentration step on descending-sorted levels: `shift` units
/// of probability move from level `lower` to level `upper` (upper < lower).
struct StaircaseStep {
  std::size_t upper;
  std::size_t lower;
  double shift;
};

/// Steps turning the sorted distribution p into the sorted distribution q,
/// given p ≺ q (same length). At most length-1 steps; every intermediate
/// vector stays sorted and each step is a 2-vector majorization increase.
std::vector<StaircaseStep> majorization_staircase(std::span<const double> p, std::span<const double> q);

/// A strictly incoherent channel with every branch satisfying K_n psi ∝ phi.
/// Throws NotMajorized unless Delta(psi) ≺ Delta(phi).
///
/// The staircase fixes a doubly stochastic D with Delta(psi)↓ = D Delta(phi)↓;
/// a Birkhoff decomposition of D then gives one Kraus operator per permutation,
/// which keeps the Kraus count polynomial in the dimension.
SIOChannel synthesize_pure_to_pure(const PureState& psi, const PureState& phi, double tol = kDefaultTol);

/// The same conversion as an explicit chain: phase-and-sort isometry, one
/// two-branch step per staircase entry, then a final relabeling onto phi.
/// The Kraus count grows as 2^steps, so this is meant for small dimensions.
SIOChannel staircase_channel(const PureState& psi, const PureState& phi, double tol = kDefaultTol);

/// Direct sum over the witness projectors of per-class channels psi_alpha ->
/// phi, each zero outside its projector, plus relabelings of the null space.
/// Throws NotTransformable when rho cannot reach phi.
SIOChannel assemble_distillation_channel(const DensityMatrix& rho, const PureState& phi,
                                         double tol = kDefaultTol);

}  // namespace cohdist
