#include "cohdist/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace cohdist {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

}  // namespace

std::size_t SupportGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& adj : adjacency) twice += adj.size();
  return twice / 2;
}

SupportGraph support_graph(const DensityMatrix& rho, double tol) {
  const std::size_t d = rho.dim();
  SupportGraph g{std::vector<bool>(d, false), std::vector<std::vector<std::size_t>>(d)};
  for (std::size_t i = 0; i < d; ++i) g.vertex[i] = rho.diag(i) > tol;
  for (std::size_t i = 0; i < d; ++i) {
    if (!g.vertex[i]) continue;
    for (std::size_t j = i + 1; j < d; ++j) {
      if (g.vertex[j] && std::abs(rho(i, j)) > tol) {
        g.adjacency[i].push_back(j);
        g.adjacency[j].push_back(i);
      }
    }
  }
  return g;
}

bool is_connected(const SupportGraph& g) {
  const std::size_t d = g.vertex.size();
  const auto start = std::find(g.vertex.begin(), g.vertex.end(), true);
  if (start == g.vertex.end()) return true;
  std::vector<bool> seen(d, false);
  std::queue<std::size_t> frontier;
  frontier.push(static_cast<std::size_t>(start - g.vertex.begin()));
  seen[frontier.front()] = true;
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop();
    for (std::size_t v : g.adjacency[u]) {
      if (!seen[v]) {
        seen[v] = true;
        frontier.push(v);
      }
    }
  }
  for (std::size_t i = 0; i < d; ++i)
    if (g.vertex[i] && !seen[i]) return false;
  return true;
}

ComplexMatrix principal_submatrix(const ComplexMatrix& m, const std::vector<std::size_t>& indices) {
  const Eigen::Index n = idx(indices.size());
  ComplexMatrix out(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) out(a, b) = m(idx(indices[a]), idx(indices[b]));
  return out;
}

BlockDecomposition block_decompose(const DensityMatrix& rho, double tol) {
  const std::size_t d = rho.dim();
  const SupportGraph g = support_graph(rho, tol);

  std::vector<std::vector<std::size_t>> components;
  std::vector<std::size_t> null_indices;
  std::vector<bool> seen(d, false);
  for (std::size_t s = 0; s < d; ++s) {
    if (!g.vertex[s]) {
      null_indices.push_back(s);
      continue;
    }
    if (seen[s]) continue;
    std::vector<std::size_t> comp;
    std::queue<std::size_t> frontier;
    frontier.push(s);
    seen[s] = true;
    while (!frontier.empty()) {
      const std::size_t u = frontier.front();
      frontier.pop();
      comp.push_back(u);
      for (std::size_t v : g.adjacency[u]) {
        if (!seen[v]) {
          seen[v] = true;
          frontier.push(v);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }

  std::vector<std::size_t> image(d);
  std::size_t next = 0;
  std::vector<Block> blocks;
  blocks.reserve(components.size());
  for (auto& comp : components) {
    for (std::size_t i : comp) image[i] = next++;
    ComplexMatrix sub = principal_submatrix(rho.matrix(), comp);
    const double weight = sub.trace().real();
    sub /= weight;
    blocks.push_back(Block{weight, DensityMatrix::assume_valid(std::move(sub)), std::move(comp)});
  }
  for (std::size_t i : null_indices) image[i] = next++;

  return BlockDecomposition{Permutation(std::move(image)), std::move(blocks), std::move(null_indices)};
}

ComplexMatrix BlockDecomposition::block_diagonal() const {
  ComplexMatrix out = ComplexMatrix::Zero(idx(dim()), idx(dim()));
  Eigen::Index offset = 0;
  for (const auto& b : blocks) {
    const Eigen::Index n = idx(b.dim());
    out.block(offset, offset, n, n) = b.weight * b.state.matrix();
    offset += n;
  }
  return out;
}

ComplexMatrix BlockDecomposition::reassemble() const { return permute(block_diagonal(), permutation.inverse()); }

}  // namespace cohdist
