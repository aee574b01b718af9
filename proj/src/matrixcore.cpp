#include "cohdist/matrixcore.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cohdist {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

}  // namespace

Permutation::Permutation(std::vector<std::size_t> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (std::size_t i = 0; i < image_.size(); ++i) {
    const std::size_t t = image_[i];
    if (t >= image_.size() || seen[t]) {
      std::ostringstream os;
      os << "image of " << i << " is " << t << ", which is out of range or repeated";
      throw Error(ErrorKind::InvalidPermutation, os.str());
    }
    seen[t] = true;
  }
}

Permutation Permutation::identity(std::size_t d) {
  std::vector<std::size_t> image(d);
  for (std::size_t i = 0; i < d; ++i) image[i] = i;
  return Permutation(std::move(image));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) inv[image_[i]] = i;
  return Permutation(std::move(inv));
}

DensityMatrix DensityMatrix::validate(const ComplexMatrix& raw, double tol) {
  if (raw.rows() == 0 || raw.rows() != raw.cols()) {
    std::ostringstream os;
    os << "expected a nonempty square matrix, got " << raw.rows() << "x" << raw.cols();
    throw Error(ErrorKind::InvalidShape, os.str());
  }
  if (!raw.allFinite()) throw Error(ErrorKind::InvalidShape, "matrix has non-finite entries");

  const Eigen::Index d = raw.rows();
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i; j < d; ++j) {
      if (std::abs(raw(i, j) - std::conj(raw(j, i))) > tol) {
        std::ostringstream os;
        os << "entry (" << i << "," << j << ") is not the conjugate of (" << j << "," << i << ")";
        throw Error(ErrorKind::NotHermitian, os.str());
      }
    }
  }

  ComplexMatrix m = 0.5 * (raw + raw.adjoint());
  const double trace = m.trace().real();
  if (std::abs(trace - 1.0) > kRenormalizeWindow) {
    std::ostringstream os;
    os.precision(17);
    os << "trace is " << trace;
    throw Error(ErrorKind::TraceNotOne, os.str());
  }
  m /= trace;

  const double psd_tol = std::max(kPsdFloor, tol);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -psd_tol) {
    std::ostringstream os;
    os << "minimum eigenvalue " << min_eig << " is below " << -psd_tol;
    throw Error(ErrorKind::NotPSD, os.str());
  }

  // A vanishing diagonal forces its row and column to vanish (|rho_ij|^2 <= rho_ii rho_jj).
  for (Eigen::Index i = 0; i < d; ++i) {
    if (m(i, i).real() > tol) continue;
    for (Eigen::Index j = 0; j < d; ++j) {
      if (j != i && std::abs(m(i, j)) > std::sqrt(psd_tol)) {
        std::ostringstream os;
        os << "diagonal entry " << i << " vanishes but (" << i << "," << j << ") does not";
        throw Error(ErrorKind::NotPSD, os.str());
      }
    }
  }
  return DensityMatrix(std::move(m));
}

PureState::PureState(ComplexVector amplitudes) : c_(std::move(amplitudes)) {
  if (c_.size() == 0) throw Error(ErrorKind::InvalidShape, "pure state has no amplitudes");
  if (!c_.allFinite()) throw Error(ErrorKind::InvalidShape, "amplitudes are not finite");
  const double norm2 = c_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kRenormalizeWindow) {
    std::ostringstream os;
    os.precision(17);
    os << "squared norm is " << norm2;
    throw Error(ErrorKind::NotNormalized, os.str());
  }
  c_ /= std::sqrt(norm2);
}

PureState PureState::basis(std::size_t d, std::size_t i) {
  ComplexVector c = ComplexVector::Zero(idx(d));
  c(idx(i)) = 1.0;
  return PureState(std::move(c));
}

PureState PureState::maximally_coherent(std::size_t d) {
  return PureState(ComplexVector::Constant(idx(d), Complex(1.0 / std::sqrt(static_cast<double>(d)), 0.0)));
}

DensityMatrix PureState::density() const { return DensityMatrix::assume_valid(c_ * c_.adjoint()); }

ProbVector PureState::dephased() const {
  std::vector<double> p(dim());
  for (std::size_t i = 0; i < dim(); ++i) p[i] = std::norm(c_(idx(i)));
  return ProbVector(std::move(p));
}

std::size_t PureState::support_size(double tol) const {
  return static_cast<std::size_t>((c_.array().abs() > tol).count());
}

ProbVector dephase(const DensityMatrix& rho) {
  std::vector<double> p(rho.dim());
  for (std::size_t i = 0; i < rho.dim(); ++i) p[i] = rho.diag(i);
  // Validation admits eigenvalues down to -kPsdFloor, so diagonals may dip that far.
  return ProbVector(std::move(p), std::max(kDefaultTol, kPsdFloor * static_cast<double>(rho.dim())));
}

namespace {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::assume_valid(kron(a.matrix(), b.matrix()));
}

PureState tensor(const PureState& a, const PureState& b) {
  return PureState(kron(a.amplitudes(), b.amplitudes()));
}

ComplexMatrix permute(const ComplexMatrix& m, const Permutation& p) {
  if (static_cast<std::size_t>(m.rows()) != p.dim() || m.rows() != m.cols())
    throw Error(ErrorKind::DimensionMismatch, "permutation and matrix dimensions differ");
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < p.dim(); ++i)
    for (std::size_t j = 0; j < p.dim(); ++j) out(idx(p(i)), idx(p(j))) = m(idx(i), idx(j));
  return out;
}

DensityMatrix permute(const DensityMatrix& rho, const Permutation& p) {
  return DensityMatrix::assume_valid(permute(rho.matrix(), p));
}

Eigen::VectorXd eigenvalues(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

std::size_t numerical_rank(const DensityMatrix& rho, double tol) {
  const Eigen::Index d = rho.matrix().rows();
  ComplexMatrix work = rho.matrix();
  std::vector<bool> used(static_cast<std::size_t>(d), false);
  std::size_t rank = 0;
  // Schur-complement updates on the full matrix; rows of chosen pivots are
  // left stale and skipped through `used`.
  while (true) {
    Eigen::Index pivot = -1;
    double best = tol;
    for (Eigen::Index k = 0; k < d; ++k) {
      if (!used[static_cast<std::size_t>(k)] && work(k, k).real() > best) {
        best = work(k, k).real();
        pivot = k;
      }
    }
    if (pivot < 0) break;
    used[static_cast<std::size_t>(pivot)] = true;
    ++rank;
    const ComplexVector col = work.col(pivot) / std::sqrt(best);
    work.noalias() -= col * col.adjoint();
  }
  return rank;
}

std::size_t support_size(const DensityMatrix& rho, double tol) {
  std::size_t m = 0;
  for (std::size_t i = 0; i < rho.dim(); ++i)
    if (rho.diag(i) > tol) ++m;
  return m;
}

}  // namespace cohdist
