#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cohdist/decomposition.hpp"
#include "cohdist/purity.hpp"

namespace cohdist {

inline constexpr std::size_t kDefaultDimCap = std::size_t{1} << 13;

/// One maximal all-ones class of the comparison matrix and the pure state the
/// projector cuts out of rho.
struct Candidate {
  IncoherentProjector projector;
  PureState state;        // amplitudes over projector.indices()
  double weight;          // Tr(P rho P)
  ProbVector dephased;    // |amplitude|^2 over projector.indices()
  std::size_t block;      // index into CandidateSet::decomposition.blocks

  bool coherent() const noexcept { return projector.size() >= 2; }
};

struct CandidateSet {
  BlockDecomposition decomposition;
  std::vector<Candidate> entries;

  bool all_coherent() const;
  std::vector<IncoherentProjector> projectors() const;
  std::vector<ProbVector> dephased() const;
};

/// Block-decompose rho, split every block into its ones-classes and project
/// out the corresponding pure states.
CandidateSet candidates(const DensityMatrix& rho, double tol = kDefaultTol);

/// True iff every candidate class has at least two indices, i.e. rho can be
/// converted to some pure coherent state.
bool can_distill_some_pure(const DensityMatrix& rho, double tol = kDefaultTol);

/// Join of the candidates' dephased vectors, each zero-padded to the largest
/// class. Throws NotDistillable when some candidate is incoherent.
ProbVector join_target(const CandidateSet& set, double tol = kDefaultTol);
ProbVector join_target(const DensityMatrix& rho, double tol = kDefaultTol);

struct TransformVerdict {
  bool feasible = false;
  bool incoherent_target = false;
  std::vector<IncoherentProjector> witness;  // empty when infeasible
};

/// Whether rho -> phi is possible by a strictly incoherent operation. An
/// incoherent target is always reachable (witness: the support singletons);
/// otherwise every candidate must be coherent and the join must be majorized
/// by Delta(phi).
TransformVerdict can_transform_to(const DensityMatrix& rho, const PureState& phi, double tol = kDefaultTol);

/// Necessary condition: rank(rho) <= floor(m / n) with m the support size of
/// Delta(rho) and n the number of nonzero amplitudes of phi.
bool rank_bound_check(const DensityMatrix& rho, const PureState& phi, double tol = kDefaultTol);

struct RankBoundRecord {
  std::size_t support = 0;       // m
  std::size_t target_support = 0; // n = 2^n_max
  std::size_t rank = 0;
  std::size_t bound = 0;         // floor(m / n)
  bool satisfied = false;
};

struct DistillationReport {
  CandidateSet candidates;
  std::optional<ProbVector> join_target{};  // present iff distillable_to_pure
  double max_entry = 1.0;                 // ||psi||_inf, the largest entry of join_target
  int n_max = 0;
  bool distillable_to_pure = false;
  bool bound_state = true;
  RankBoundRecord diagnostics{};
  std::size_t dim = 0;
};

struct DistillationConfig {
  double tol = kDefaultTol;
  std::size_t dim_cap = kDefaultDimCap;
};

/// floor(log2(1/x) + 1e-9); the guard keeps x = 2^-k from landing on k-1.
int floor_log2_inverse(double x);

/// Maximum number of two-level maximally coherent states obtainable with
/// certainty from the tensor product of `states`. Throws DimensionOverflow when
/// the product dimension exceeds config.dim_cap.
DistillationReport n_max(std::span<const DensityMatrix> states, const DistillationConfig& config = {});

/// Tensor product of all states, refusing products larger than dim_cap.
DensityMatrix tensor_all(std::span<const DensityMatrix> states, std::size_t dim_cap = kDefaultDimCap);

}  // namespace cohdist
