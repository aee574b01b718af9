#pragma once

#include <vector>

#include "cohdist/matrixcore.hpp"

namespace cohdist {

/// Undirected graph on basis indices. Only indices with rho_ii > tol are
/// vertices; isolated support indices have empty adjacency lists.
struct SupportGraph {
  std::vector<bool> vertex;
  std::vector<std::vector<std::size_t>> adjacency;

  std::size_t edge_count() const;
};

SupportGraph support_graph(const DensityMatrix& rho, double tol = kDefaultTol);

struct Block {
  double weight = 0.0;
  DensityMatrix state;                // trace-one restriction to `indices`
  std::vector<std::size_t> indices;   // original basis indices, ascending

  std::size_t dim() const noexcept { return indices.size(); }
};

/// P rho P^t = (+)_mu p_mu rho_mu (+) 0 with irreducible rho_mu.
struct BlockDecomposition {
  Permutation permutation;
  std::vector<Block> blocks;                // ordered by smallest original index
  std::vector<std::size_t> null_indices;    // rho_ii <= tol, ascending

  std::size_t dim() const noexcept { return permutation.dim(); }
  std::size_t null_dim() const noexcept { return null_indices.size(); }

  /// (+) p_mu rho_mu (+) 0, the permuted form.
  ComplexMatrix block_diagonal() const;
  /// permute^{-1}((+) p_mu rho_mu (+) 0), i.e. rho rebuilt from the blocks.
  ComplexMatrix reassemble() const;
};

/// Blocks are the connected components of the support graph (found by BFS),
/// in order of their smallest index; within a block the original index order
/// is kept, and the null indices come last.
BlockDecomposition block_decompose(const DensityMatrix& rho, double tol = kDefaultTol);

/// Principal submatrix on `indices`, in the given order.
ComplexMatrix principal_submatrix(const ComplexMatrix& m, const std::vector<std::size_t>& indices);

bool is_connected(const SupportGraph& g);

}  // namespace cohdist
