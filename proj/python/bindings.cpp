#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "modlie/error.hpp"
#include "modlie/report.hpp"

namespace py = pybind11;
using namespace modlie;

namespace {

// Payload functions take and return JSON text; the Python package parses it.
PreparedTorus prepare(const std::string& algebra, const std::string& fixture, uint64_t seed) {
  TorusSource src;
  src.seed = seed;
  if (!fixture.empty()) {
    src.fixture = fixture;
  } else {
    Json j = Json::parse(algebra);
    if (j.contains("payload") && j.contains("command")) j = j["payload"];
    src.algebra = algebra_from_json(j, true);
    if (j.contains("torus") && !j["torus"].is_null())
      for (const auto& v : j["torus"]) src.torus.push_back(vec_from_json(v, src.algebra->dim()));
    if (j.contains("standard_zero") && j["standard_zero"].is_object()) {
      std::vector<Vec> rows;
      for (const auto& r : j["standard_zero"].at("basis")) rows.push_back(vec_from_json(r, src.algebra->dim()));
      src.standard_zero = Subspace::span(src.algebra->field(), src.algebra->dim(), rows);
    }
  }
  return prepare_torus(src);
}

std::string dump(const Json& j) { return canonical(j); }

}  // namespace

PYBIND11_MODULE(_modlie, m) {
  m.doc() = "exact computations with modular Lie algebras";
  m.attr("__version__") = MODLIE_VERSION;

  py::register_exception<AlarmError>(m, "AlarmError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr e) {
    try {
      if (e) std::rethrow_exception(e);
    } catch (const ValidationError& v) {
      PyErr_SetString(PyExc_ValueError, v.what());
    } catch (const Json::exception& j) {
      PyErr_SetString(PyExc_ValueError, j.what());
    }
  });

  py::class_<LieAlgebra, std::shared_ptr<LieAlgebra>>(m, "Algebra")
      .def_static(
          "from_json",
          [](const std::string& s) {
            auto L = algebra_from_json(Json::parse(s), true);
            return std::const_pointer_cast<LieAlgebra>(L);
          },
          py::arg("text"))
      .def_property_readonly("dim", &LieAlgebra::dim)
      .def_property_readonly("p", [](const LieAlgebra& L) { return L.F().p(); })
      .def_property_readonly("k", [](const LieAlgebra& L) { return L.F().k(); })
      .def_property_readonly("labels", [](const LieAlgebra& L) {
        std::vector<std::string> out;
        for (size_t i = 0; i < L.dim(); ++i) out.push_back(L.label(i));
        return out;
      })
      .def("bracket", &LieAlgebra::bracket, py::arg("x"), py::arg("y"))
      .def("jacobi_holds", &LieAlgebra::jacobi_holds)
      .def("is_simple", [](const std::shared_ptr<LieAlgebra>& L, uint64_t seed) { return is_simple(L, seed); },
           py::arg("seed") = 1)
      .def("is_solvable", [](const LieAlgebra& L) { return is_solvable(L); })
      .def("is_nilpotent", [](const LieAlgebra& L) { return is_nilpotent(L); })
      .def("center_dim", [](const LieAlgebra& L) { return center(L).dim(); })
      .def("to_json", [](const LieAlgebra& L) { return dump(algebra_to_json(L)); });

  m.def(
      "construct",
      [](const std::string& type, uint32_t p, uint32_t k, size_t mm, std::vector<uint32_t> n,
         const std::string& variant) {
        ConstructSpec s{type, p, k, mm, std::move(n), variant};
        return dump(construct_json(s));
      },
      py::arg("type"), py::arg("p") = 5, py::arg("k") = 1, py::arg("m") = 1, py::arg("n") = std::vector<uint32_t>{},
      py::arg("variant") = "second_derived");
  m.def("fixture_names", &torus_fixture_names);

  m.def(
      "atlas",
      [](const std::string& a, const std::string& fx, size_t budget, uint64_t seed) {
        py::gil_scoped_release nogil;
        return dump(atlas_payload(prepare(a, fx, seed), budget, seed));
      },
      py::arg("algebra") = "", py::arg("fixture") = "", py::arg("budget") = 20, py::arg("seed") = 1);
  m.def(
      "sections",
      [](const std::string& a, const std::string& fx, uint64_t seed) {
        py::gil_scoped_release nogil;
        return dump(sections_payload(prepare(a, fx, seed)));
      },
      py::arg("algebra") = "", py::arg("fixture") = "", py::arg("seed") = 1);
  m.def(
      "twosection",
      [](const std::string& a, const std::string& fx, std::optional<Vec> alpha, std::optional<Vec> beta,
         uint64_t seed) {
        py::gil_scoped_release nogil;
        return dump(twosection_payload(prepare(a, fx, seed), alpha, beta, seed));
      },
      py::arg("algebra") = "", py::arg("fixture") = "", py::arg("alpha") = py::none(), py::arg("beta") = py::none(),
      py::arg("seed") = 1);
  m.def(
      "optimize",
      [](const std::string& a, const std::string& fx, size_t budget, uint64_t seed) {
        py::gil_scoped_release nogil;
        return dump(optimize_payload(prepare(a, fx, seed), budget, seed));
      },
      py::arg("algebra") = "", py::arg("fixture") = "", py::arg("budget") = 20, py::arg("seed") = 1);
  m.def(
      "grade",
      [](const std::string& a, const std::string& fx, size_t budget, uint64_t seed) {
        py::gil_scoped_release nogil;
        return dump(grade_payload(prepare(a, fx, seed), budget, seed));
      },
      py::arg("algebra") = "", py::arg("fixture") = "", py::arg("budget") = 20, py::arg("seed") = 1);
  m.def(
      "verify_fixtures",
      [](uint64_t seed, const std::string& out_dir) {
        py::gil_scoped_release nogil;
        return dump(verify_fixtures(seed, out_dir));
      },
      py::arg("seed") = 1, py::arg("out_dir") = "");
  m.def("content_hash", &content_hash);
}
