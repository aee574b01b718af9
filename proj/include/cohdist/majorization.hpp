#pragma once

#include <span>
#include <vector>

#include "cohdist/error.hpp"

namespace cohdist {

/// A finite probability distribution. Entries are validated on construction
/// (each in [-tol, 1+tol], total within tol of one) and never change after.
class ProbVector {
 public:
  explicit ProbVector(std::vector<double> entries, double tol = kDefaultTol);

  std::size_t dim() const noexcept { return entries_.size(); }
  std::span<const double> entries() const noexcept { return entries_; }
  double operator[](std::size_t i) const { return entries_[i]; }
  double max() const;

  /// Copy extended with trailing zeros up to `dim` (no-op when already that long).
  ProbVector padded(std::size_t dim) const;

  friend bool operator==(const ProbVector&, const ProbVector&) = default;

 private:
  std::vector<double> entries_;
};

/// Cumulative sums of a descending-sorted distribution (the Lorenz curve
/// sampled at integer abscissae 1..dim).
using MajorizationCurve = std::vector<double>;

ProbVector sort_desc(const ProbVector& p);

MajorizationCurve curve(const ProbVector& p);

/// True iff p ≺ q, i.e. q majorizes p. The shorter vector is zero-padded.
/// Prefix sums are compared with an absolute tolerance; ties pass.
bool majorizes(const ProbVector& q, const ProbVector& p, double tol = kDefaultTol);

/// Greatest lower bound: increments of the pointwise minimum of the curves.
ProbVector meet(std::span<const ProbVector> set, double tol = kDefaultTol);

/// One flattening step on a vector of increments. Finds the first index j with
/// a[j] > a[j-1], the greatest i < j whose left neighbour a[i-1] is at least the
/// mean of a[i..j] (a[-1] counts as +inf), and replaces a[i..j] by that mean.
/// Returns the input unchanged when it is already nonincreasing.
std::vector<double> flatten_once(std::span<const double> increments);

bool is_nonincreasing(std::span<const double> values);

/// Least upper bound: increments of the pointwise maximum of the curves,
/// flattened until nonincreasing.
ProbVector join(std::span<const ProbVector> set, double tol = kDefaultTol);

}  // namespace cohdist
