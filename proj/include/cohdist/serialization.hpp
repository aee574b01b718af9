#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "cohdist/channels.hpp"
#include "cohdist/decomposition.hpp"
#include "cohdist/distillation.hpp"
#include "cohdist/majorization.hpp"
#include "cohdist/matrixcore.hpp"
#include "cohdist/purity.hpp"

// On-disk formats:
//   distribution   {"probs": [p0, p1, ...]}
//   density matrix {"dim": d, "matrix": [[[re, im], ...], ...]}   (row-major)
//   pure state     {"dim": d, "amplitudes": [[re, im], ...]}
//   channel        {"dim_in": n, "dim_out": m, "kraus": [matrix, ...]}
// Malformed documents raise Error{Parse}; well-formed but invalid values raise
// the same errors as the in-memory constructors.

namespace cohdist::io {

using nlohmann::json;

json to_json(const ProbVector& p);
json to_json(const DensityMatrix& rho);
json to_json(const PureState& psi);
json to_json(const SIOChannel& channel);
json matrix_to_json(const ComplexMatrix& m);

ProbVector distribution_from_json(const json& j, double tol = kDefaultTol);
/// Accepts either the density-matrix or the pure-state layout.
DensityMatrix state_from_json(const json& j, double tol = kDefaultTol);
PureState pure_from_json(const json& j);
SIOChannel channel_from_json(const json& j, double tol = kDefaultTol);
ComplexMatrix matrix_from_json(const json& j);

bool is_pure_layout(const json& j);

json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& j);

/// Report fragments.
json decomposition_json(const BlockDecomposition& dec);
json candidates_json(const CandidateSet& set);
json report_json(const DistillationReport& report);

}  // namespace cohdist::io
