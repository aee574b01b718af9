#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "cohdist/error.hpp"
#include "cohdist/majorization.hpp"

namespace cohdist {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Minimum eigenvalue a validated density matrix may have.
inline constexpr double kPsdFloor = 1e-7;
/// Trace or norm drift that validation silently renormalizes.
inline constexpr double kRenormalizeWindow = 1e-6;

/// Bijection on {0, ..., d-1}. image()[i] is the position original index i
/// is sent to, so permute() moves entry (i, j) to (image[i], image[j]).
class Permutation {
 public:
  explicit Permutation(std::vector<std::size_t> image);
  static Permutation identity(std::size_t d);

  std::size_t dim() const noexcept { return image_.size(); }
  std::size_t operator()(std::size_t i) const { return image_[i]; }
  const std::vector<std::size_t>& image() const noexcept { return image_; }
  Permutation inverse() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> image_;
};

/// Hermitian, positive semidefinite, unit-trace matrix in the incoherent basis.
class DensityMatrix {
 public:
  /// Checks every invariant and throws Error{NotHermitian, NotPSD, TraceNotOne,
  /// InvalidShape}. A trace within kRenormalizeWindow of one is rescaled, and
  /// the result is symmetrized to be exactly Hermitian.
  static DensityMatrix validate(const ComplexMatrix& raw, double tol = kDefaultTol);

  /// For matrices that are valid by construction (tensor products, conjugation
  /// by permutations, principal blocks). No checks.
  static DensityMatrix assume_valid(ComplexMatrix m) { return DensityMatrix(std::move(m)); }

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  double diag(std::size_t i) const { return (*this)(i, i).real(); }

 private:
  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

/// Unit vector of complex amplitudes.
class PureState {
 public:
  /// Throws NotNormalized when the squared norm is further than
  /// kRenormalizeWindow from one; smaller drift is normalized away.
  explicit PureState(ComplexVector amplitudes);

  static PureState basis(std::size_t d, std::size_t i);
  /// Uniform superposition (1/sqrt(d)) sum_i |i>.
  static PureState maximally_coherent(std::size_t d);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(c_.size()); }
  const ComplexVector& amplitudes() const noexcept { return c_; }
  Complex operator[](std::size_t i) const { return c_(static_cast<Eigen::Index>(i)); }

  DensityMatrix density() const;
  /// |c_i|^2 as a distribution.
  ProbVector dephased() const;
  /// Number of amplitudes with modulus above tol.
  std::size_t support_size(double tol = kDefaultTol) const;

 private:
  ComplexVector c_;
};

ProbVector dephase(const DensityMatrix& rho);

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
PureState tensor(const PureState& a, const PureState& b);

DensityMatrix permute(const DensityMatrix& rho, const Permutation& p);
ComplexMatrix permute(const ComplexMatrix& m, const Permutation& p);

Eigen::VectorXd eigenvalues(const DensityMatrix& rho);

/// Number of pivots taken by a diagonally pivoted Cholesky factorization before
/// the largest remaining diagonal drops to tol. Cost is O(d^2 r) for rank r.
std::size_t numerical_rank(const DensityMatrix& rho, double tol = kDefaultTol);

/// Number of diagonal entries above tol.
std::size_t support_size(const DensityMatrix& rho, double tol = kDefaultTol);

}  // namespace cohdist
