#include "cohdist/distillation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cohdist {

bool CandidateSet::all_coherent() const {
  return std::all_of(entries.begin(), entries.end(), [](const Candidate& c) { return c.coherent(); });
}

std::vector<IncoherentProjector> CandidateSet::projectors() const {
  std::vector<IncoherentProjector> out;
  out.reserve(entries.size());
  for (const auto& c : entries) out.push_back(c.projector);
  return out;
}

std::vector<ProbVector> CandidateSet::dephased() const {
  std::vector<ProbVector> out;
  out.reserve(entries.size());
  for (const auto& c : entries) out.push_back(c.dephased);
  return out;
}

CandidateSet candidates(const DensityMatrix& rho, double tol) {
  CandidateSet set{block_decompose(rho, tol), {}};
  const auto& blocks = set.decomposition.blocks;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const Block& block = blocks[b];
    for (const auto& local : ones_classes(comparison_matrix(block.state, tol), tol)) {
      std::vector<std::size_t> global;
      global.reserve(local.size());
      for (std::size_t i : local.indices()) global.push_back(block.indices[i]);
      IncoherentProjector projector(std::move(global));
      ProjectedState projected = extract_pure(rho, projector, tol);
      ProbVector dephased = projected.state.dephased();
      set.entries.push_back(Candidate{std::move(projector), std::move(projected.state), projected.weight,
                                      std::move(dephased), b});
    }
  }
  return set;
}

bool can_distill_some_pure(const DensityMatrix& rho, double tol) { return candidates(rho, tol).all_coherent(); }

ProbVector join_target(const CandidateSet& set, double tol) {
  if (set.entries.empty()) throw Error(ErrorKind::NotDistillable, "state has no candidates");
  if (!set.all_coherent())
    throw Error(ErrorKind::NotDistillable, "some projected pure state is incoherent");
  std::size_t d = 0;
  for (const auto& c : set.entries) d = std::max(d, c.dephased.dim());
  std::vector<ProbVector> members;
  members.reserve(set.entries.size());
  for (const auto& c : set.entries) members.push_back(c.dephased.padded(d));
  return join(members, tol);
}

ProbVector join_target(const DensityMatrix& rho, double tol) { return join_target(candidates(rho, tol), tol); }

TransformVerdict can_transform_to(const DensityMatrix& rho, const PureState& phi, double tol) {
  TransformVerdict verdict;
  if (phi.support_size(tol) <= 1) {
    verdict.feasible = true;
    verdict.incoherent_target = true;
    for (std::size_t i = 0; i < rho.dim(); ++i)
      if (rho.diag(i) > tol) verdict.witness.emplace_back(std::vector<std::size_t>{i});
    return verdict;
  }
  const CandidateSet set = candidates(rho, tol);
  if (!set.all_coherent()) return verdict;
  if (majorizes(phi.dephased(), join_target(set, tol), tol)) {
    verdict.feasible = true;
    verdict.witness = set.projectors();
  }
  return verdict;
}

namespace {

std::size_t block_rank(const BlockDecomposition& dec, double tol) {
  std::size_t rank = 0;
  for (const auto& b : dec.blocks) rank += numerical_rank(b.state, tol / b.weight);
  return rank;
}

}  // namespace

bool rank_bound_check(const DensityMatrix& rho, const PureState& phi, double tol) {
  const std::size_t m = support_size(rho, tol);
  const std::size_t n = std::max<std::size_t>(phi.support_size(tol), 1);
  return numerical_rank(rho, tol) <= m / n;
}

int floor_log2_inverse(double x) {
  if (!(x > 0.0) || x > 1.0 + kDefaultTol)
    throw std::domain_error("floor_log2_inverse expects a value in (0, 1]");
  return std::max(0, static_cast<int>(std::floor(std::log2(1.0 / x) + 1e-9)));
}

DensityMatrix tensor_all(std::span<const DensityMatrix> states, std::size_t dim_cap) {
  if (states.empty()) throw Error(ErrorKind::InvalidShape, "no input states");
  std::size_t dim = 1;
  for (const auto& s : states) {
    if (s.dim() > dim_cap / dim) {
      std::ostringstream os;
      os << "tensor product dimension exceeds the cap of " << dim_cap;
      throw Error(ErrorKind::DimensionOverflow, os.str());
    }
    dim *= s.dim();
  }
  DensityMatrix rho = states.front();
  for (std::size_t k = 1; k < states.size(); ++k) rho = tensor(rho, states[k]);
  return rho;
}

DistillationReport n_max(std::span<const DensityMatrix> states, const DistillationConfig& config) {
  const DensityMatrix rho = tensor_all(states, config.dim_cap);
  DistillationReport report{.candidates = candidates(rho, config.tol)};
  report.dim = rho.dim();
  report.bound_state = !has_rank_one_submatrix(rho, config.tol);
  report.distillable_to_pure = report.candidates.all_coherent();
  if (report.distillable_to_pure) {
    report.join_target = join_target(report.candidates, config.tol);
    report.max_entry = report.join_target->max();
    report.n_max = floor_log2_inverse(report.max_entry);
  }

  auto& diag = report.diagnostics;
  diag.support = support_size(rho, config.tol);
  diag.target_support = std::size_t{1} << report.n_max;
  diag.rank = block_rank(report.candidates.decomposition, config.tol);
  diag.bound = diag.support / diag.target_support;
  diag.satisfied = diag.rank <= diag.bound;
  return report;
}

}  // namespace cohdist
