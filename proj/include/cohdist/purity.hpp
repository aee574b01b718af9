#pragma once

#include <vector>

#include "cohdist/matrixcore.hpp"

namespace cohdist {

/// A = (Delta rho)^{-1/2} |rho| (Delta rho)^{-1/2}, with zero rows and columns
/// off the support of Delta rho. A_ij = 1 exactly when the 2x2 principal
/// submatrix on {i, j} has rank one.
struct ComparisonMatrix {
  Eigen::MatrixXd values;
  std::vector<bool> support;

  std::size_t dim() const noexcept { return support.size(); }
  double operator()(std::size_t i, std::size_t j) const {
    return values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
};

struct ComparisonSummary {
  double min_off_diagonal = 1.0;   // over support pairs i != j; 1 when there are none
  std::size_t saturated_pairs = 0; // unordered pairs with A_ij >= 1 - tol
};

/// P_I = sum_{i in I} |i><i|, stored as its ascending index set.
class IncoherentProjector {
 public:
  explicit IncoherentProjector(std::vector<std::size_t> indices);

  const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  bool contains(std::size_t i) const;

  friend bool operator==(const IncoherentProjector&, const IncoherentProjector&) = default;

 private:
  std::vector<std::size_t> indices_;
};

/// psi_alpha = P rho P / Tr(P rho P), with amplitudes listed in the order of
/// the projector's indices.
struct ProjectedState {
  PureState state;
  double weight;
};

ComparisonMatrix comparison_matrix(const DensityMatrix& rho, double tol = kDefaultTol);

ComparisonSummary summarize(const ComparisonMatrix& a, double tol = kDefaultTol);

/// Maximal index sets whose principal submatrix of A is all ones (within tol),
/// ordered by smallest index. Support indices saturating with nobody come back
/// as singletons. Classes are found as connected components of the graph
/// {A_ij >= 1 - tol}; each component must then be a clique at 1 - 10 tol or
/// CliqueVerificationFailed is raised.
std::vector<IncoherentProjector> ones_classes(const ComparisonMatrix& a, double tol = kDefaultTol);

/// Amplitudes c_i = rho_{i,i0} / sqrt(rho_{i0,i0} w) for the reference index i0
/// (the first index of maximal diagonal weight), so c_{i0} > 0. Throws
/// ZeroWeight when w <= tol and NotPure when the projection is mixed.
ProjectedState extract_pure(const DensityMatrix& rho, const IncoherentProjector& alpha,
                            double tol = kDefaultTol);

/// True iff some i != j has A_ij >= 1 - tol. False marks a bound state.
bool has_rank_one_submatrix(const DensityMatrix& rho, double tol = kDefaultTol);

}  // namespace cohdist
