#include "cohdist/purity.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace cohdist {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

// Pairwise saturation degrades roughly linearly along a chain of near-parallel
// Gram vectors.
constexpr double kCliqueSlack = 10.0;

double purity_tolerance(double tol) { return 1e-9 + 20.0 * tol; }

}  // namespace

IncoherentProjector::IncoherentProjector(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  if (indices_.empty()) throw Error(ErrorKind::InvalidShape, "projector has no indices");
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
    throw Error(ErrorKind::InvalidShape, "projector indices repeat");
}

bool IncoherentProjector::contains(std::size_t i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

ComparisonMatrix comparison_matrix(const DensityMatrix& rho, double tol) {
  const std::size_t d = rho.dim();
  ComparisonMatrix a{Eigen::MatrixXd::Zero(idx(d), idx(d)), std::vector<bool>(d)};
  std::vector<double> inv_sqrt(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    a.support[i] = rho.diag(i) > tol;
    if (a.support[i]) inv_sqrt[i] = 1.0 / std::sqrt(rho.diag(i));
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (!a.support[i]) continue;
    a.values(idx(i), idx(i)) = 1.0;
    for (std::size_t j = i + 1; j < d; ++j) {
      if (!a.support[j]) continue;
      const double v = std::abs(rho(i, j)) * inv_sqrt[i] * inv_sqrt[j];
      a.values(idx(i), idx(j)) = v;
      a.values(idx(j), idx(i)) = v;
    }
  }
  return a;
}

ComparisonSummary summarize(const ComparisonMatrix& a, double tol) {
  ComparisonSummary s;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (!a.support[i]) continue;
    for (std::size_t j = i + 1; j < a.dim(); ++j) {
      if (!a.support[j]) continue;
      s.min_off_diagonal = std::min(s.min_off_diagonal, a(i, j));
      if (a(i, j) >= 1.0 - tol) ++s.saturated_pairs;
    }
  }
  return s;
}

std::vector<IncoherentProjector> ones_classes(const ComparisonMatrix& a, double tol) {
  const std::size_t d = a.dim();
  const double edge = 1.0 - tol;
  std::vector<IncoherentProjector> classes;
  std::vector<bool> seen(d, false);
  for (std::size_t s = 0; s < d; ++s) {
    if (!a.support[s] || seen[s]) continue;
    std::vector<std::size_t> comp;
    std::queue<std::size_t> frontier;
    frontier.push(s);
    seen[s] = true;
    while (!frontier.empty()) {
      const std::size_t u = frontier.front();
      frontier.pop();
      comp.push_back(u);
      for (std::size_t v = 0; v < d; ++v) {
        if (!seen[v] && a.support[v] && a(u, v) >= edge) {
          seen[v] = true;
          frontier.push(v);
        }
      }
    }
    for (std::size_t x = 0; x < comp.size(); ++x) {
      for (std::size_t y = x + 1; y < comp.size(); ++y) {
        if (a(comp[x], comp[y]) < 1.0 - kCliqueSlack * tol) {
          std::ostringstream os;
          os.precision(17);
          os << "indices " << comp[x] << " and " << comp[y] << " share a saturated component but A = "
             << a(comp[x], comp[y]);
          throw Error(ErrorKind::CliqueVerificationFailed, os.str());
        }
      }
    }
    classes.emplace_back(std::move(comp));
  }
  return classes;
}

ProjectedState extract_pure(const DensityMatrix& rho, const IncoherentProjector& alpha, double tol) {
  const auto& ix = alpha.indices();
  if (ix.back() >= rho.dim())
    throw Error(ErrorKind::DimensionMismatch, "projector index outside the state's dimension");

  double weight = 0.0;
  std::size_t ref = ix.front();
  for (std::size_t i : ix) {
    weight += rho.diag(i);
    if (rho.diag(i) > rho.diag(ref)) ref = i;
  }
  if (weight <= tol) {
    std::ostringstream os;
    os << "Tr(P rho P) = " << weight;
    throw Error(ErrorKind::ZeroWeight, os.str());
  }

  const double scale = 1.0 / std::sqrt(rho.diag(ref) * weight);
  ComplexVector c(idx(ix.size()));
  for (std::size_t a = 0; a < ix.size(); ++a) c(idx(a)) = rho(ix[a], ref) * scale;

  // Tr(M^2) for the normalized projection M; equals one iff M is rank one.
  double purity = 0.0;
  for (std::size_t i : ix)
    for (std::size_t j : ix) purity += std::norm(rho(i, j));
  purity /= weight * weight;
  if (std::abs(purity - 1.0) > purity_tolerance(tol)) {
    std::ostringstream os;
    os.precision(17);
    os << "projection has Tr(psi^2) = " << purity;
    throw Error(ErrorKind::NotPure, os.str());
  }
  return ProjectedState{PureState(std::move(c)), weight};
}

bool has_rank_one_submatrix(const DensityMatrix& rho, double tol) {
  const std::size_t d = rho.dim();
  const double threshold = (1.0 - tol) * (1.0 - tol);
  for (std::size_t i = 0; i < d; ++i) {
    const double rii = rho.diag(i);
    if (rii <= tol) continue;
    for (std::size_t j = i + 1; j < d; ++j) {
      const double rjj = rho.diag(j);
      if (rjj <= tol) continue;
      if (std::norm(rho(i, j)) >= threshold * rii * rjj) return true;
    }
  }
  return false;
}

}  // namespace cohdist
