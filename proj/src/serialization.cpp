#include "cohdist/serialization.hpp"

#include <fstream>
#include <sstream>

namespace cohdist::io {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(ErrorKind::Parse, "complex entries are written as [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::Parse, std::string("missing key \"") + key + "\"");
  return j.at(key);
}

void check_dim(const json& j, std::size_t actual) {
  if (!j.contains("dim")) return;
  const json& d = j.at("dim");
  if (!d.is_number_unsigned() || d.get<std::size_t>() != actual) {
    std::ostringstream os;
    os << "\"dim\" does not match the " << actual << " entries given";
    throw Error(ErrorKind::Parse, os.str());
  }
}

json indices_json(const std::vector<std::size_t>& v) { return json(v); }

}  // namespace

json to_json(const ProbVector& p) {
  return json{{"probs", std::vector<double>(p.entries().begin(), p.entries().end())}};
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const DensityMatrix& rho) { return json{{"dim", rho.dim()}, {"matrix", matrix_to_json(rho.matrix())}}; }

json to_json(const PureState& psi) {
  json amps = json::array();
  for (std::size_t i = 0; i < psi.dim(); ++i) amps.push_back(complex_json(psi[i]));
  return json{{"dim", psi.dim()}, {"amplitudes", std::move(amps)}};
}

json to_json(const SIOChannel& channel) {
  json kraus = json::array();
  for (const auto& k : channel.kraus()) kraus.push_back(matrix_to_json(k));
  return json{{"dim_in", channel.dim_in()}, {"dim_out", channel.dim_out()}, {"kraus", std::move(kraus)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw Error(ErrorKind::Parse, "a matrix is a nonempty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  ComplexMatrix m(idx(rows), idx(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw Error(ErrorKind::Parse, "matrix rows have unequal lengths");
    for (std::size_t c = 0; c < cols; ++c) m(idx(r), idx(c)) = complex_from(j[r][c]);
  }
  return m;
}

ProbVector distribution_from_json(const json& j, double tol) {
  const json& probs = member(j, "probs");
  if (!probs.is_array()) throw Error(ErrorKind::Parse, "\"probs\" must be an array");
  std::vector<double> v;
  for (const auto& x : probs) {
    if (!x.is_number()) throw Error(ErrorKind::Parse, "\"probs\" entries must be numbers");
    v.push_back(x.get<double>());
  }
  return ProbVector(std::move(v), tol);
}

bool is_pure_layout(const json& j) { return j.is_object() && j.contains("amplitudes"); }

PureState pure_from_json(const json& j) {
  const json& amps = member(j, "amplitudes");
  if (!amps.is_array() || amps.empty()) throw Error(ErrorKind::Parse, "\"amplitudes\" must be a nonempty array");
  ComplexVector c(idx(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) c(idx(i)) = complex_from(amps[i]);
  check_dim(j, amps.size());
  return PureState(std::move(c));
}

DensityMatrix state_from_json(const json& j, double tol) {
  if (is_pure_layout(j)) return pure_from_json(j).density();
  const ComplexMatrix m = matrix_from_json(member(j, "matrix"));
  check_dim(j, static_cast<std::size_t>(m.rows()));
  return DensityMatrix::validate(m, tol);
}

SIOChannel channel_from_json(const json& j, double tol) {
  const json& list = member(j, "kraus");
  if (!list.is_array() || list.empty()) throw Error(ErrorKind::Parse, "\"kraus\" must be a nonempty array");
  std::vector<ComplexMatrix> kraus;
  for (const auto& k : list) kraus.push_back(matrix_from_json(k));
  return SIOChannel(std::move(kraus), tol);
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Parse, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

json decomposition_json(const BlockDecomposition& dec) {
  json blocks = json::array();
  for (const auto& b : dec.blocks)
    blocks.push_back(json{{"indices", indices_json(b.indices)}, {"weight", b.weight}, {"dim", b.dim()}});
  return json{{"permutation", dec.permutation.image()},
              {"blocks", std::move(blocks)},
              {"null_indices", indices_json(dec.null_indices)},
              {"null_dim", dec.null_dim()}};
}

json candidates_json(const CandidateSet& set) {
  json out = json::array();
  for (const auto& c : set.entries) {
    json amps = json::array();
    for (std::size_t i = 0; i < c.state.dim(); ++i) amps.push_back(complex_json(c.state[i]));
    out.push_back(json{{"indices", indices_json(c.projector.indices())},
                       {"weight", c.weight},
                       {"block", c.block},
                       {"coherent", c.coherent()},
                       {"dephased", to_json(c.dephased).at("probs")},
                       {"amplitudes", std::move(amps)}});
  }
  return out;
}

json report_json(const DistillationReport& r) {
  const auto& d = r.diagnostics;
  json out{{"dim", r.dim},
           {"decomposition", decomposition_json(r.candidates.decomposition)},
           {"candidates", candidates_json(r.candidates)},
           {"join_target", r.join_target ? to_json(*r.join_target).at("probs") : json(nullptr)},
           {"max_entry", r.join_target ? json(r.max_entry) : json(nullptr)},
           {"n_max", r.n_max},
           {"distillable_to_pure", r.distillable_to_pure},
           {"bound_state", r.bound_state},
           {"diagnostics",
            {{"support", d.support},
             {"target_support", d.target_support},
             {"rank", d.rank},
             {"bound", d.bound},
             {"satisfied", d.satisfied}}}};
  return out;
}

}  // namespace cohdist::io
