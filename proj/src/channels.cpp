#include "cohdist/channels.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace cohdist {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

// Differences below this are rounding noise in the staircase and Birkhoff loops.
constexpr double kExactEps = 1e-15;
constexpr double kBirkhoffEps = 1e-13;

Complex unit_phase(Complex z) {
  const double r = std::abs(z);
  return r > 0.0 ? z / r : Complex(1.0, 0.0);
}

/// Basis levels of s ordered by |c_i|^2 descending, ties by index.
std::vector<std::size_t> sorted_levels(const PureState& s) {
  std::vector<std::size_t> order(s.dim());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return std::norm(s[a]) > std::norm(s[b]); });
  return order;
}

/// Kraus operators sending each listed column to its own row, in chunks of `rows`.
std::vector<ComplexMatrix> relabel_columns(const std::vector<std::size_t>& columns, std::size_t rows,
                                           std::size_t cols) {
  std::vector<ComplexMatrix> out;
  for (std::size_t start = 0; start < columns.size(); start += rows) {
    ComplexMatrix k = ComplexMatrix::Zero(idx(rows), idx(cols));
    for (std::size_t c = start; c < std::min(columns.size(), start + rows); ++c) k(idx(c - start), idx(columns[c])) = 1.0;
    out.push_back(std::move(k));
  }
  return out;
}

/// Global phase per branch so the first nonzero output amplitude is real positive.
void normalize_branch_phases(std::vector<ComplexMatrix>& kraus, const PureState& psi, double tol) {
  for (auto& k : kraus) {
    const ComplexVector out = k * psi.amplitudes();
    for (Eigen::Index i = 0; i < out.size(); ++i) {
      if (std::abs(out(i)) > tol) {
        k *= std::conj(unit_phase(out(i)));
        break;
      }
    }
  }
}

struct ForwardStep {
  std::size_t from;  // loses mass
  std::size_t to;    // gains mass
  double delta;
  double t;          // T = (1-t) I + t * swap(from, to)
};

/// T-transforms taking the sorted q down to the sorted p.
std::vector<ForwardStep> t_transform_chain(std::span<const double> p, std::span<const double> q) {
  const std::size_t n = p.size();
  std::vector<double> r(q.begin(), q.end());
  std::vector<ForwardStep> chain;
  for (std::size_t guard = 0; guard < n; ++guard) {
    std::size_t j = n;
    for (std::size_t i = n; i-- > 0;) {
      if (r[i] > p[i] + kExactEps) {
        j = i;
        break;
      }
    }
    if (j == n) break;
    std::size_t k = n;
    for (std::size_t i = j + 1; i < n; ++i) {
      if (r[i] < p[i] - kExactEps) {
        k = i;
        break;
      }
    }
    // Only reachable when p ≺ q holds merely within tolerance.
    if (k == n) break;
    const double excess = r[j] - p[j];
    const double deficit = p[k] - r[k];
    const double delta = std::min(excess, deficit);
    const double t = delta / (r[j] - r[k]);
    if (excess <= deficit) {
      r[j] = p[j];
      r[k] += delta;
    } else {
      r[j] -= delta;
      r[k] = p[k];
    }
    chain.push_back(ForwardStep{j, k, delta, t});
  }
  return chain;
}

/// Greedy Birkhoff-von Neumann decomposition: sum_k w_k Pi_k with
/// Pi_k(a, sigma_k(a)) = 1. Each round zeroes at least one entry.
std::vector<std::pair<double, std::vector<std::size_t>>> birkhoff(Eigen::MatrixXd residual) {
  const std::size_t n = static_cast<std::size_t>(residual.rows());
  std::vector<std::pair<double, std::vector<std::size_t>>> terms;
  double total = 0.0;
  for (std::size_t round = 0; round <= n * n && total < 1.0 - kBirkhoffEps; ++round) {
    // Kuhn's augmenting paths, trying heavier entries first.
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b)
        if (residual(idx(a), idx(b)) > kBirkhoffEps) adj[a].push_back(b);
      std::sort(adj[a].begin(), adj[a].end(),
                [&](std::size_t x, std::size_t y) { return residual(idx(a), idx(x)) > residual(idx(a), idx(y)); });
    }
    std::vector<std::size_t> owner(n, n);
    std::vector<bool> visited;
    std::function<bool(std::size_t)> augment = [&](std::size_t a) {
      for (std::size_t b : adj[a]) {
        if (visited[b]) continue;
        visited[b] = true;
        if (owner[b] == n || augment(owner[b])) {
          owner[b] = a;
          return true;
        }
      }
      return false;
    };
    bool perfect = true;
    for (std::size_t a = 0; a < n && perfect; ++a) {
      visited.assign(n, false);
      perfect = augment(a);
    }
    if (!perfect) break;

    std::vector<std::size_t> sigma(n);
    for (std::size_t b = 0; b < n; ++b) sigma[owner[b]] = b;
    double w = 1.0;
    for (std::size_t a = 0; a < n; ++a) w = std::min(w, residual(idx(a), idx(sigma[a])));
    for (std::size_t a = 0; a < n; ++a) {
      double& e = residual(idx(a), idx(sigma[a]));
      e = (e - w <= kBirkhoffEps) ? 0.0 : e - w;
    }
    total += w;
    terms.emplace_back(w, std::move(sigma));
  }
  return terms;
}

/// Sorted probabilities of s over the levels in `order`, zero-padded to n.
std::vector<double> sorted_probs(const PureState& s, const std::vector<std::size_t>& order, std::size_t n) {
  std::vector<double> v(n, 0.0);
  for (std::size_t a = 0; a < order.size(); ++a) v[a] = std::norm(s[order[a]]);
  return v;
}

void require_majorized(const PureState& psi, const PureState& phi, double tol) {
  if (!majorizes(phi.dephased(), psi.dephased(), tol))
    throw Error(ErrorKind::NotMajorized, "Delta(psi) is not majorized by Delta(phi)");
}

}  // namespace

bool is_strictly_incoherent(const ComplexMatrix& k, double tol) {
  const Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> nz = k.array().abs() > tol;
  return (nz.cast<int>().rowwise().sum() <= 1).all() && (nz.cast<int>().colwise().sum() <= 1).all();
}

SIOChannel::SIOChannel(std::vector<ComplexMatrix> kraus, double tol, double completeness_tol) {
  if (kraus.empty()) throw Error(ErrorKind::InvalidShape, "channel has no Kraus operators");
  const Eigen::Index rows = kraus.front().rows();
  const Eigen::Index cols = kraus.front().cols();
  for (auto& k : kraus) {
    if (k.rows() != rows || k.cols() != cols)
      throw Error(ErrorKind::DimensionMismatch, "Kraus operators have different shapes");
    if (k.size() == 0) throw Error(ErrorKind::InvalidShape, "empty Kraus operator");
    if ((k.array().abs() <= tol).all()) continue;
    if (!is_strictly_incoherent(k, tol)) {
      std::ostringstream os;
      os << "Kraus operator " << kraus_.size() << " has two nonzero entries in a row or column";
      throw Error(ErrorKind::NotStrictlyIncoherent, os.str());
    }
    kraus_.push_back(std::move(k));
  }
  if (kraus_.empty()) throw Error(ErrorKind::IncompleteChannel, "every Kraus operator vanished");
  const double err = completeness_error();
  if (err > completeness_tol) {
    std::ostringstream os;
    os << "sum K^dag K deviates from the identity by " << err;
    throw Error(ErrorKind::IncompleteChannel, os.str());
  }
}

SIOChannel SIOChannel::identity(std::size_t d) { return SIOChannel({ComplexMatrix::Identity(idx(d), idx(d))}); }

double SIOChannel::completeness_error() const {
  ComplexMatrix sum = ComplexMatrix::Zero(kraus_.front().cols(), kraus_.front().cols());
  for (const auto& k : kraus_) sum.noalias() += k.adjoint() * k;
  sum -= ComplexMatrix::Identity(sum.rows(), sum.cols());
  return sum.cwiseAbs().maxCoeff();
}

DensityMatrix apply(const SIOChannel& channel, const DensityMatrix& rho, double tol) {
  if (channel.dim_in() != rho.dim()) {
    std::ostringstream os;
    os << "channel acts on dimension " << channel.dim_in() << " but the state has dimension " << rho.dim();
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
  ComplexMatrix out = ComplexMatrix::Zero(idx(channel.dim_out()), idx(channel.dim_out()));
  for (const auto& k : channel.kraus()) out.noalias() += k * rho.matrix() * k.adjoint();
  return DensityMatrix::validate(out, tol);
}

SIOChannel compose(const SIOChannel& outer, const SIOChannel& inner, double tol, double completeness_tol) {
  if (outer.dim_in() != inner.dim_out())
    throw Error(ErrorKind::DimensionMismatch, "outer channel input does not match inner channel output");
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(outer.size() * inner.size());
  for (const auto& a : outer.kraus())
    for (const auto& b : inner.kraus()) kraus.push_back(a * b);
  return SIOChannel(std::move(kraus), tol, completeness_tol);
}

std::vector<StaircaseStep> majorization_staircase(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw Error(ErrorKind::DimensionMismatch, "staircase endpoints differ in length");
  const auto chain = t_transform_chain(p, q);
  std::vector<StaircaseStep> steps;
  steps.reserve(chain.size());
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) steps.push_back(StaircaseStep{it->from, it->to, it->delta});
  return steps;
}

SIOChannel synthesize_pure_to_pure(const PureState& psi, const PureState& phi, double tol) {
  require_majorized(psi, phi, tol);
  const std::size_t n_in = psi.dim();
  const std::size_t n_out = phi.dim();
  const std::size_t n = std::max(n_in, n_out);
  const auto in_order = sorted_levels(psi);
  const auto out_order = sorted_levels(phi);
  const auto ps = sorted_probs(psi, in_order, n);
  const auto qs = sorted_probs(phi, out_order, n);

  // ps = D qs with D the product of the chain's T-transforms.
  Eigen::MatrixXd d = Eigen::MatrixXd::Identity(idx(n), idx(n));
  for (const auto& step : t_transform_chain(ps, qs)) {
    const Eigen::RowVectorXd from = d.row(idx(step.from));
    const Eigen::RowVectorXd to = d.row(idx(step.to));
    d.row(idx(step.from)) = (1.0 - step.t) * from + step.t * to;
    d.row(idx(step.to)) = step.t * from + (1.0 - step.t) * to;
  }
  const auto terms = birkhoff(d);

  // Realized mass per input position; normalizing by it makes every column of
  // sum K^dag K exactly one even when the decomposition is slightly short.
  std::vector<double> realized(n, 0.0);
  for (const auto& [w, sigma] : terms)
    for (std::size_t a = 0; a < n; ++a) realized[a] += w * qs[sigma[a]];

  std::vector<ComplexMatrix> kraus;
  for (const auto& [w, sigma] : terms) {
    ComplexMatrix k = ComplexMatrix::Zero(idx(n_out), idx(n_in));
    for (std::size_t a = 0; a < n_in; ++a) {
      const std::size_t b = sigma[a];
      if (ps[a] <= 0.0 || realized[a] <= 0.0 || qs[b] <= 0.0) continue;
      const std::size_t row = out_order[b];
      const std::size_t col = in_order[a];
      const Complex phase = unit_phase(phi[row]) * std::conj(unit_phase(psi[col]));
      k(idx(row), idx(col)) = std::sqrt(w * qs[b] / realized[a]) * phase;
    }
    kraus.push_back(std::move(k));
  }

  std::vector<std::size_t> idle;
  for (std::size_t a = 0; a < n_in; ++a)
    if (ps[a] <= 0.0 || realized[a] <= 0.0) idle.push_back(in_order[a]);
  for (auto& k : relabel_columns(idle, n_out, n_in)) kraus.push_back(std::move(k));

  normalize_branch_phases(kraus, psi, tol);
  return SIOChannel(std::move(kraus), tol);
}

SIOChannel staircase_channel(const PureState& psi, const PureState& phi, double tol) {
  require_majorized(psi, phi, tol);
  const std::size_t n_in = psi.dim();
  const std::size_t n_out = phi.dim();
  const std::size_t n = std::max(n_in, n_out);
  const auto in_order = sorted_levels(psi);
  const auto out_order = sorted_levels(phi);
  auto v = sorted_probs(psi, in_order, n);
  const auto qs = sorted_probs(phi, out_order, n);

  // Sort levels and strip phases: psi -> sum_a sqrt(p_a) |a>.
  ComplexMatrix embed = ComplexMatrix::Zero(idx(n), idx(n_in));
  for (std::size_t a = 0; a < n_in; ++a) embed(idx(a), idx(in_order[a])) = std::conj(unit_phase(psi[in_order[a]]));
  SIOChannel chain({embed}, tol);

  for (const auto& step : majorization_staircase(v, qs)) {
    const std::size_t u = step.upper;
    const std::size_t l = step.lower;
    const double a = v[u];
    const double b = v[l];
    const double a2 = a + step.shift;
    const double b2 = b - step.shift;
    const double c1 = std::sqrt(std::clamp((a - b2) / (a2 - b2), 0.0, 1.0));
    const double c2 = std::sqrt(1.0 - c1 * c1);

    ComplexMatrix stay = c1 * ComplexMatrix::Identity(idx(n), idx(n));
    stay(idx(u), idx(u)) = c1 * std::sqrt(a2 / a);
    stay(idx(l), idx(l)) = c1 * std::sqrt(b2 / b);
    ComplexMatrix swap = c2 * ComplexMatrix::Identity(idx(n), idx(n));
    swap(idx(u), idx(u)) = 0.0;
    swap(idx(l), idx(l)) = 0.0;
    swap(idx(u), idx(l)) = c2 * std::sqrt(a2 / b);
    swap(idx(l), idx(u)) = c2 * std::sqrt(b2 / a);
    chain = compose(SIOChannel({stay, swap}, tol, 1e-8), chain, tol);

    v[u] = a2;
    v[l] = b2;
  }

  // Relabel sorted positions onto phi's levels with its phases; positions past
  // phi's dimension carry no amplitude and are parked on spare rows.
  ComplexMatrix place = ComplexMatrix::Zero(idx(n_out), idx(n));
  for (std::size_t b = 0; b < n_out; ++b) place(idx(out_order[b]), idx(b)) = unit_phase(phi[out_order[b]]);
  std::vector<ComplexMatrix> finish{place};
  std::vector<std::size_t> spare;
  for (std::size_t b = n_out; b < n; ++b) spare.push_back(b);
  for (auto& k : relabel_columns(spare, n_out, n)) finish.push_back(std::move(k));
  chain = compose(SIOChannel(std::move(finish), tol), chain, tol);

  std::vector<ComplexMatrix> kraus = chain.kraus();
  normalize_branch_phases(kraus, psi, tol);
  return SIOChannel(std::move(kraus), tol, 1e-8);
}

SIOChannel assemble_distillation_channel(const DensityMatrix& rho, const PureState& phi, double tol) {
  const std::size_t d_in = rho.dim();
  const std::size_t d_out = phi.dim();
  const TransformVerdict verdict = can_transform_to(rho, phi, tol);
  if (!verdict.feasible) throw Error(ErrorKind::NotTransformable, "rho cannot be converted to phi");

  std::vector<ComplexMatrix> kraus;
  if (verdict.incoherent_target) {
    Eigen::Index target = 0;
    phi.amplitudes().cwiseAbs().maxCoeff(&target);
    for (std::size_t i = 0; i < d_in; ++i) {
      ComplexMatrix k = ComplexMatrix::Zero(idx(d_out), idx(d_in));
      k(target, idx(i)) = 1.0;
      kraus.push_back(std::move(k));
    }
    return SIOChannel(std::move(kraus), tol);
  }

  const CandidateSet set = candidates(rho, tol);
  for (const auto& c : set.entries) {
    const SIOChannel local = synthesize_pure_to_pure(c.state, phi, tol);
    const auto& ix = c.projector.indices();
    for (const auto& lk : local.kraus()) {
      ComplexMatrix k = ComplexMatrix::Zero(idx(d_out), idx(d_in));
      for (std::size_t a = 0; a < ix.size(); ++a) k.col(idx(ix[a])) = lk.col(idx(a));
      kraus.push_back(std::move(k));
    }
  }
  for (auto& k : relabel_columns(set.decomposition.null_indices, d_out, d_in)) kraus.push_back(std::move(k));
  return SIOChannel(std::move(kraus), tol);
}

}  // namespace cohdist
