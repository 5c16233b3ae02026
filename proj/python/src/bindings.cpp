#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gleasonkit/cli.hpp"
#include "gleasonkit/json_io.hpp"

namespace py = pybind11;
using namespace gleasonkit;

namespace {

Subsystem subsystem(int which) {
  if (which != 1 && which != 2) throw Error("bad-dims", "subsystem is 1 or 2");
  return which == 1 ? Subsystem::First : Subsystem::Second;
}

Orientation orientation(const std::string& name) { return orientation_from_string(name); }

py::dict classification_dict(const Classification& c) {
  py::dict out;
  out["verdict"] = to_string(c.verdict);
  out["min_eigenvalue"] = c.min_eigenvalue;
  out["min_product_expectation"] = c.min_product_expectation;
  out["orientation"] = to_string(c.orientation);
  if (c.witness) {
    out["witness"] = py::make_tuple(c.witness->u, c.witness->v);
  } else {
    out["witness"] = py::none();
  }
  out["restarts"] = c.restarts;
  out["seed"] = c.seed;
  return out;
}

// CLI commands return (exit_code, json_text) so callers see exactly what the binary prints.
py::tuple command(const cli::CommandResult& r) { return py::make_tuple(r.exit_code, cli::render(r.output)); }

cli::RunConfig run_config(std::uint64_t seed, int restarts) {
  cli::RunConfig config;
  config.seed = seed;
  config.restarts = restarts;
  return config;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "gleasonkit native core";

  // Subclass of RuntimeError carrying the library's error code as `.code`.
  py::exception<Error>(m, "GleasonkitError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const py::object type = py::module_::import("gleasonkit._core").attr("GleasonkitError");
      py::object exc = type(e.what());
      exc.attr("code") = e.code();
      PyErr_SetObject(type.ptr(), exc.ptr());
    }
  });

  m.def("kron", py::overload_cast<const ComplexMatrix&, const ComplexMatrix&>(&kron), py::arg("a"), py::arg("b"));
  m.def(
      "partial_trace",
      [](const ComplexMatrix& x, int traced, Index d1, Index d2) {
        return partial_trace(x, subsystem(traced), {d1, d2});
      },
      py::arg("m"), py::arg("traced"), py::arg("d1"), py::arg("d2"));
  m.def(
      "partial_transpose",
      [](const ComplexMatrix& x, int transposed, Index d1, Index d2) {
        return partial_transpose(x, subsystem(transposed), {d1, d2});
      },
      py::arg("m"), py::arg("transposed"), py::arg("d1"), py::arg("d2"));
  m.def(
      "eigh",
      [](const ComplexMatrix& x) {
        const EigenDecomposition e = eig_hermitian(x);
        return py::make_tuple(e.eigenvalues, e.eigenvectors);
      },
      py::arg("m"));
  m.def("max_entangled_projector", &max_entangled_projector, py::arg("d"));
  m.def("swap_operator", &swap_operator, py::arg("d"));

  m.def(
      "jordan_product",
      [](const ComplexMatrix& a, const ComplexMatrix& b) { return jordan_product(a, b); }, py::arg("a"),
      py::arg("b"));
  m.def(
      "psi", [](const ComplexMatrix& a, bool star) { return psi(HermitianOperator(a), star).matrix(); },
      py::arg("a"), py::arg("star") = false);
  m.def(
      "choi_of",
      [](const ComplexMatrix& r, Index d1, Index d2, const std::string& o) {
        return choi_of(FunctionalOperator(d1, d2, HermitianOperator(r)), orientation(o)).matrix();
      },
      py::arg("r"), py::arg("d1"), py::arg("d2"), py::arg("orientation"));
  m.def(
      "time_orientation",
      [](const ComplexMatrix& r, Index d1, Index d2) {
        return std::string(to_string(time_orientation(FunctionalOperator(d1, d2, HermitianOperator(r)))));
      },
      py::arg("r"), py::arg("d1"), py::arg("d2"));
  m.def(
      "min_product_expectation",
      [](const ComplexMatrix& r, Index d1, Index d2, int restarts, std::uint64_t seed) {
        const ProductMinimum p =
            min_product_expectation(FunctionalOperator(d1, d2, HermitianOperator(r)), restarts, seed);
        return py::make_tuple(p.value, p.u, p.v, p.trajectory);
      },
      py::arg("r"), py::arg("d1"), py::arg("d2"), py::arg("restarts") = 16, py::arg("seed") = 0);
  m.def(
      "classify_functional",
      [](const ComplexMatrix& r, Index d1, Index d2, int restarts, std::uint64_t seed) {
        return classification_dict(
            classify_functional(FunctionalOperator(d1, d2, HermitianOperator(r)), restarts, seed));
      },
      py::arg("r"), py::arg("d1"), py::arg("d2"), py::arg("restarts") = 16, py::arg("seed") = 0);

  m.def(
      "reconstruct_state",
      [](const std::string& section_json) {
        const ReconstructionResult r = reconstruct_state(io::section_from_json(nlohmann::json::parse(section_json)));
        py::dict out;
        out["state"] = r.state.matrix();
        out["residual"] = r.residual;
        out["completeness_rank"] = r.completeness_rank;
        out["psd_defect"] = r.psd_defect;
        out["is_state"] = r.is_state;
        return out;
      },
      py::arg("section_json"));
  m.def(
      "gns_error",
      [](const ComplexMatrix& rho) { return gns(DensityOperator(rho)).verification_error; }, py::arg("rho"));
  m.def(
      "stinespring_error",
      [](const ComplexMatrix& choi, Index d1, Index d2) {
        return stinespring_dilate(superop_from_choi(choi, d1, d2), d1, d2).verification_error;
      },
      py::arg("choi"), py::arg("d1"), py::arg("d2"));

  m.def(
      "cli_reconstruct",
      [](const std::string& input, std::uint64_t seed) { return command(cli::cmd_reconstruct(input, run_config(seed, 16))); },
      py::arg("input"), py::arg("seed") = 0);
  m.def(
      "cli_classify",
      [](const std::string& input, std::uint64_t seed, int restarts) {
        return command(cli::cmd_classify(input, run_config(seed, restarts)));
      },
      py::arg("input"), py::arg("seed") = 0, py::arg("restarts") = 16);
  m.def(
      "cli_demo", [](const std::string& name, std::uint64_t seed) { return command(cli::cmd_demo(name, run_config(seed, 16))); },
      py::arg("name"), py::arg("seed") = 0);
  m.def(
      "cli_gen",
      [](const std::string& kind, long long dim, std::uint64_t seed) {
        return command(cli::cmd_gen(kind, dim, run_config(seed, 16)));
      },
      py::arg("kind"), py::arg("dim") = 3, py::arg("seed") = 0);
}
