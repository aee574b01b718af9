#include "cohdist/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

namespace cohdist {

ProbVector::ProbVector(std::vector<double> entries, double tol) : entries_(std::move(entries)) {
  if (entries_.empty()) throw Error(ErrorKind::InvalidDistribution, "distribution is empty");
  double total = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const double x = entries_[i];
    if (!std::isfinite(x) || x < -tol || x > 1.0 + tol) {
      std::ostringstream os;
      os << "entry " << i << " = " << x << " outside [0, 1]";
      throw Error(ErrorKind::InvalidDistribution, os.str());
    }
    total += x;
  }
  if (std::abs(total - 1.0) > tol) {
    std::ostringstream os;
    os.precision(17);
    os << "entries sum to " << total << ", not 1";
    throw Error(ErrorKind::InvalidDistribution, os.str());
  }
}

double ProbVector::max() const { return *std::max_element(entries_.begin(), entries_.end()); }

ProbVector ProbVector::padded(std::size_t dim) const {
  if (dim <= entries_.size()) return *this;
  std::vector<double> out(entries_);
  out.resize(dim, 0.0);
  return ProbVector(std::move(out), std::numeric_limits<double>::infinity());
}

ProbVector sort_desc(const ProbVector& p) {
  std::vector<double> v(p.entries().begin(), p.entries().end());
  std::sort(v.begin(), v.end(), std::greater<>());
  return ProbVector(std::move(v), std::numeric_limits<double>::infinity());
}

MajorizationCurve curve(const ProbVector& p) {
  const ProbVector sorted = sort_desc(p);
  MajorizationCurve c(sorted.dim());
  std::partial_sum(sorted.entries().begin(), sorted.entries().end(), c.begin());
  return c;
}

namespace {

std::size_t common_dim(std::span<const ProbVector> set) {
  std::size_t d = 0;
  for (const auto& p : set) d = std::max(d, p.dim());
  return d;
}

std::vector<MajorizationCurve> padded_curves(std::span<const ProbVector> set) {
  if (set.empty()) throw Error(ErrorKind::InvalidDistribution, "lattice operation on an empty set");
  const std::size_t d = common_dim(set);
  std::vector<MajorizationCurve> curves;
  curves.reserve(set.size());
  for (const auto& p : set) curves.push_back(curve(p.padded(d)));
  return curves;
}

// Increments between curve points that agree up to rounding come out as +-1e-16.
// Left in, they become amplitudes of order 1e-8 once a target state is built.
constexpr double kRoundingFloor = 1e-15;

std::vector<double> increments(const MajorizationCurve& c) {
  std::vector<double> a(c.size());
  std::adjacent_difference(c.begin(), c.end(), a.begin());
  for (double& x : a)
    if (std::abs(x) <= kRoundingFloor) x = 0.0;
  return a;
}

}  // namespace

bool majorizes(const ProbVector& q, const ProbVector& p, double tol) {
  const std::size_t d = std::max(p.dim(), q.dim());
  const MajorizationCurve cq = curve(q.padded(d));
  const MajorizationCurve cp = curve(p.padded(d));
  for (std::size_t l = 0; l < d; ++l) {
    if (cp[l] > cq[l] + tol) return false;
  }
  return true;
}

ProbVector meet(std::span<const ProbVector> set, double tol) {
  const auto curves = padded_curves(set);
  MajorizationCurve lower = curves.front();
  for (const auto& c : curves)
    for (std::size_t l = 0; l < lower.size(); ++l) lower[l] = std::min(lower[l], c[l]);
  return ProbVector(increments(lower), tol);
}

bool is_nonincreasing(std::span<const double> values) {
  return std::adjacent_find(values.begin(), values.end(), std::less<>()) == values.end();
}

std::vector<double> flatten_once(std::span<const double> a) {
  std::vector<double> q(a.begin(), a.end());
  const auto rise = std::adjacent_find(q.begin(), q.end(), std::less<>());
  if (rise == q.end()) return q;
  const std::size_t j = static_cast<std::size_t>(rise - q.begin()) + 1;

  // Scan i = j-1, j-2, ..., 0 and stop at the first (greatest) admissible one;
  // i = 0 always qualifies because its left neighbour is +inf.
  double sum = q[j];
  std::size_t i = j;
  double mean = 0.0;
  while (true) {
    --i;
    sum += q[i];
    mean = sum / static_cast<double>(j - i + 1);
    if (i == 0 || q[i - 1] >= mean) break;
  }
  std::fill(q.begin() + static_cast<std::ptrdiff_t>(i), q.begin() + static_cast<std::ptrdiff_t>(j) + 1, mean);
  return q;
}

ProbVector join(std::span<const ProbVector> set, double tol) {
  const auto curves = padded_curves(set);
  MajorizationCurve upper = curves.front();
  for (const auto& c : curves)
    for (std::size_t l = 0; l < upper.size(); ++l) upper[l] = std::max(upper[l], c[l]);

  std::vector<double> a = increments(upper);
  // Every pass leaves a[0..j] nonincreasing and j strictly grows, so dim passes suffice.
  std::size_t passes = 0;
  while (!is_nonincreasing(a)) {
    if (++passes > a.size())
      throw std::logic_error("join: flattening did not reach a fixed point");
    a = flatten_once(a);
  }
  return ProbVector(std::move(a), tol);
}

}  // namespace cohdist
