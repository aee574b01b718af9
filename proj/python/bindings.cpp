#include <pybind11/complex.h>
#include <pybind11/gil_safe_call_once.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cohdist/channels.hpp"
#include "cohdist/serialization.hpp"

namespace py = pybind11;
using namespace cohdist;

namespace {

std::vector<ProbVector> to_probs(const std::vector<std::vector<double>>& set, double tol) {
  std::vector<ProbVector> out;
  out.reserve(set.size());
  for (const auto& p : set) out.emplace_back(p, tol);
  return out;
}

std::vector<double> entries(const ProbVector& p) { return {p.entries().begin(), p.entries().end()}; }

py::dict decomposition_dict(const BlockDecomposition& dec) {
  py::list blocks;
  for (const auto& b : dec.blocks) {
    py::dict d;
    d["indices"] = b.indices;
    d["weight"] = b.weight;
    d["state"] = b.state.matrix();
    blocks.append(d);
  }
  py::dict out;
  out["permutation"] = dec.permutation.image();
  out["blocks"] = blocks;
  out["null_indices"] = dec.null_indices;
  out["block_diagonal"] = dec.block_diagonal();
  return out;
}

}  // namespace

PYBIND11_MODULE(_cohdist, m) {
  m.doc() = "Deterministic coherence distillation under strictly incoherent operations";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
  error_type.call_once_and_store_result(
      [&]() { return py::exception<Error>(m, "CohdistError", PyExc_ValueError); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const py::object& type = error_type.get_stored();
      py::object instance = type(e.what());
      instance.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(type.ptr(), instance.ptr());
    }
  });

  m.attr("DEFAULT_TOL") = kDefaultTol;
  m.attr("DEFAULT_DIM_CAP") = kDefaultDimCap;

  // Majorization lattice on plain float lists.
  m.def(
      "majorizes",
      [](const std::vector<double>& q, const std::vector<double>& p, double tol) {
        return majorizes(ProbVector(q, tol), ProbVector(p, tol), tol);
      },
      py::arg("q"), py::arg("p"), py::arg("tol") = kDefaultTol, "True iff p is majorized by q.");
  m.def(
      "meet",
      [](const std::vector<std::vector<double>>& set, double tol) { return entries(meet(to_probs(set, tol), tol)); },
      py::arg("distributions"), py::arg("tol") = kDefaultTol);
  m.def(
      "join",
      [](const std::vector<std::vector<double>>& set, double tol) { return entries(join(to_probs(set, tol), tol)); },
      py::arg("distributions"), py::arg("tol") = kDefaultTol);

  m.def(
      "validate",
      [](const ComplexMatrix& rho, double tol) { return DensityMatrix::validate(rho, tol).matrix(); },
      py::arg("rho"), py::arg("tol") = kDefaultTol,
      "Checked and renormalized copy of rho; raises CohdistError when rho is not a state.");

  m.def(
      "block_decompose",
      [](const ComplexMatrix& rho, double tol) {
        return decomposition_dict(block_decompose(DensityMatrix::validate(rho, tol), tol));
      },
      py::arg("rho"), py::arg("tol") = kDefaultTol);

  m.def(
      "comparison_matrix",
      [](const ComplexMatrix& rho, double tol) {
        return comparison_matrix(DensityMatrix::validate(rho, tol), tol).values;
      },
      py::arg("rho"), py::arg("tol") = kDefaultTol);

  m.def(
      "candidates",
      [](const ComplexMatrix& rho, double tol) {
        py::list out;
        for (const auto& c : candidates(DensityMatrix::validate(rho, tol), tol).entries) {
          py::dict d;
          d["indices"] = c.projector.indices();
          d["weight"] = c.weight;
          d["amplitudes"] = ComplexVector(c.state.amplitudes());
          d["coherent"] = c.coherent();
          out.append(d);
        }
        return out;
      },
      py::arg("rho"), py::arg("tol") = kDefaultTol);

  m.def(
      "n_max",
      [](const std::vector<ComplexMatrix>& states, double tol, std::size_t dim_cap) {
        std::vector<DensityMatrix> rhos;
        for (const auto& s : states) rhos.push_back(DensityMatrix::validate(s, tol));
        const auto report = n_max(rhos, DistillationConfig{tol, dim_cap});
        return py::module_::import("json").attr("loads")(io::report_json(report).dump());
      },
      py::arg("states"), py::arg("tol") = kDefaultTol, py::arg("dim_cap") = kDefaultDimCap,
      "Distillation report for the tensor product of `states`, as a dict.");

  m.def(
      "can_transform_to",
      [](const ComplexMatrix& rho, const ComplexVector& phi, double tol) {
        return can_transform_to(DensityMatrix::validate(rho, tol), PureState(phi), tol).feasible;
      },
      py::arg("rho"), py::arg("phi"), py::arg("tol") = kDefaultTol);

  m.def(
      "distillation_channel",
      [](const ComplexMatrix& rho, const ComplexVector& phi, double tol) {
        return assemble_distillation_channel(DensityMatrix::validate(rho, tol), PureState(phi), tol).kraus();
      },
      py::arg("rho"), py::arg("phi"), py::arg("tol") = kDefaultTol,
      "Kraus operators of a strictly incoherent channel taking rho to |phi><phi|.");

  m.def(
      "pure_to_pure_channel",
      [](const ComplexVector& psi, const ComplexVector& phi, double tol) {
        return synthesize_pure_to_pure(PureState(psi), PureState(phi), tol).kraus();
      },
      py::arg("psi"), py::arg("phi"), py::arg("tol") = kDefaultTol);

  m.def(
      "apply_channel",
      [](const std::vector<ComplexMatrix>& kraus, const ComplexMatrix& rho, double tol) {
        return apply(SIOChannel(kraus, tol), DensityMatrix::validate(rho, tol), tol).matrix();
      },
      py::arg("kraus"), py::arg("rho"), py::arg("tol") = kDefaultTol);

  m.def(
      "is_strictly_incoherent", [](const ComplexMatrix& k, double tol) { return is_strictly_incoherent(k, tol); },
      py::arg("kraus_operator"), py::arg("tol") = kDefaultTol);
}
