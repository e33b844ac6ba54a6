// Python bindings for the float-mode pipeline. The CLI covers rational mode;
// here diagrams, distances, and the invariance harness are exposed over
// doubles, with infinity mapped to float('inf').

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "folipers/io.hpp"
#include "folipers/multidist.hpp"
#include "folipers/random_inputs.hpp"

namespace py = pybind11;
using namespace folipers;

namespace {

VectorFiltration<double> filtration_from(const std::vector<std::vector<double>>& values) {
  if (values.empty()) throw std::invalid_argument("need one value vector per vertex");
  VectorFiltration<double> phi;
  phi.components = static_cast<unsigned>(values.front().size());
  phi.values = values;
  return phi;
}

AdmissiblePair<double> pair_from(const std::vector<double>& direction,
                                 const std::vector<double>& offset, const std::string& scheme) {
  AdmissiblePair<double> pair{direction, offset, parse_scheme(scheme)};
  check_admissible(pair, 1e-9);
  return pair;
}

double ext_to_py(const Extended<double>& x) { return x.as_double(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "multidimensional persistent homology rank invariants and matching distances";

  py::class_<SimplicialComplex>(m, "SimplicialComplex")
      .def_property_readonly("vertex_count", &SimplicialComplex::vertex_count)
      .def_property_readonly("top_dimension", &SimplicialComplex::top_dimension)
      .def("simplices", &SimplicialComplex::simplices, py::arg("dim"))
      .def("contains", &SimplicialComplex::contains, py::arg("simplex"))
      .def("__len__", &SimplicialComplex::size)
      .def("__eq__", [](const SimplicialComplex& a, const SimplicialComplex& b) { return a == b; })
      .def("__repr__", [](const SimplicialComplex& K) {
        return "<SimplicialComplex with " + std::to_string(K.size()) + " simplices, top dim " +
               std::to_string(K.top_dimension()) + ">";
      });

  py::class_<PersistenceDiagram<double>>(m, "Diagram")
      .def(py::init([](unsigned degree, std::vector<std::tuple<double, double, unsigned>> proper,
                       std::vector<std::pair<double, unsigned>> essential) {
             PersistenceDiagram<double> D;
             D.degree = degree;
             for (auto [u, v, mult] : proper) {
               if (!(u < v)) throw std::invalid_argument("proper point needs birth < death");
               D.proper.push_back({u, v, mult});
             }
             for (auto [u, mult] : essential) D.essential.push_back({u, mult});
             return D;
           }),
           py::arg("degree") = 0, py::arg("proper") = std::vector<std::tuple<double, double, unsigned>>{},
           py::arg("essential") = std::vector<std::pair<double, unsigned>>{})
      .def_readonly("degree", &PersistenceDiagram<double>::degree)
      .def_property_readonly("proper",
                             [](const PersistenceDiagram<double>& D) {
                               std::vector<std::tuple<double, double, unsigned>> out;
                               for (const auto& p : D.proper)
                                 out.emplace_back(p.birth, p.death, p.multiplicity);
                               return out;
                             })
      .def_property_readonly("essential",
                             [](const PersistenceDiagram<double>& D) {
                               std::vector<std::pair<double, unsigned>> out;
                               for (const auto& e : D.essential)
                                 out.emplace_back(e.birth, e.multiplicity);
                               return out;
                             })
      .def("rank", [](const PersistenceDiagram<double>& D, double u,
                      double v) { return rank_from_diagram(D, u, v); },
           py::arg("u"), py::arg("v"))
      .def("__repr__", [](const PersistenceDiagram<double>& D) {
        return "<Diagram degree " + std::to_string(D.degree) + ": " +
               std::to_string(D.proper_count()) + " proper, " +
               std::to_string(D.essential_count()) + " essential>";
      });

  m.def("build_complex", &build_complex, py::arg("simplices"),
        "face-closed simplicial complex from (maximal) simplices");

  m.def(
      "betti",
      [](const SimplicialComplex& K, unsigned k, std::uint32_t characteristic) {
        return betti(K, k, FieldSpec{characteristic});
      },
      py::arg("complex"), py::arg("k"), py::arg("characteristic") = 2);

  m.def(
      "simplex_value",
      [](const SimplicialComplex& K, const std::vector<std::vector<double>>& values,
         const Simplex& sigma) { return simplex_value(K, filtration_from(values), sigma); },
      py::arg("complex"), py::arg("vertex_values"), py::arg("simplex"));

  m.def(
      "sublevel",
      [](const SimplicialComplex& K, const std::vector<std::vector<double>>& values,
         const std::vector<double>& u) { return sublevel(K, filtration_from(values), u); },
      py::arg("complex"), py::arg("vertex_values"), py::arg("u"));

  m.def(
      "diagram",
      [](const SimplicialComplex& K, const std::vector<double>& vertex_values, unsigned k,
         std::uint32_t characteristic) {
        return diagram_of(K, extend_by_max(K, vertex_values), k, FieldSpec{characteristic});
      },
      py::arg("complex"), py::arg("vertex_values"), py::arg("k") = 0,
      py::arg("characteristic") = 2,
      "degree-k persistence diagram of the max-extended vertex filtration");

  m.def(
      "rank_invariant",
      [](const SimplicialComplex& K, const std::vector<std::vector<double>>& values, unsigned k,
         const std::vector<double>& u, const std::vector<double>& v,
         std::uint32_t characteristic) {
        return rank_oracle(K, filtration_from(values), k, u, v, FieldSpec{characteristic});
      },
      py::arg("complex"), py::arg("vertex_values"), py::arg("k"), py::arg("u"), py::arg("v"),
      py::arg("characteristic") = 2,
      "rank of the inclusion-induced map between sublevel homologies");

  m.def(
      "leaf_through",
      [](const std::string& scheme, const std::vector<double>& u, const std::vector<double>& v) {
        auto [pair, coords] = leaf_through(parse_scheme(scheme), u, v);
        return py::make_tuple(pair.direction, pair.offset, coords.s, coords.t);
      },
      py::arg("scheme"), py::arg("u"), py::arg("v"),
      "(direction, offset, s, t) of the unique leaf through (u, v)");

  m.def(
      "reduce_values",
      [](const SimplicialComplex& K, const std::vector<std::vector<double>>& values,
         const std::vector<double>& direction, const std::vector<double>& offset,
         const std::string& scheme) {
        auto pair = pair_from(direction, offset, scheme);
        auto phi = filtration_from(values);
        std::vector<double> out;
        for (const auto& row : phi.values) {
          double best = (row[0] - offset[0]) / direction[0];
          for (std::size_t c = 1; c < row.size(); ++c)
            best = std::max(best, (row[c] - offset[c]) / direction[c]);
          out.push_back(best);
        }
        return out;
      },
      py::arg("complex"), py::arg("vertex_values"), py::arg("direction"), py::arg("offset"),
      py::arg("scheme") = "ladm",
      "per-vertex values of the reduction max_i (phi_i - b_i)/l_i along a leaf");

  m.def(
      "d_match",
      [](const PersistenceDiagram<double>& A, const PersistenceDiagram<double>& B) {
        return ext_to_py(d_match(A, B));
      },
      py::arg("d1"), py::arg("d2"),
      "bottleneck matching distance; float('inf') when essential counts differ");

  m.def(
      "brute_force_bottleneck",
      [](const PersistenceDiagram<double>& A, const PersistenceDiagram<double>& B) {
        return ext_to_py(brute_force_bottleneck(A, B));
      },
      py::arg("d1"), py::arg("d2"), "exhaustive oracle, at most 8 expanded points per diagram");

  m.def(
      "leaf_distance",
      [](const SimplicialComplex& KX, const std::vector<std::vector<double>>& phi,
         const SimplicialComplex& KY, const std::vector<std::vector<double>>& psi, unsigned k,
         const std::vector<double>& direction, const std::vector<double>& offset,
         const std::string& scheme, std::uint32_t characteristic) {
        return ext_to_py(leaf_distance(KX, filtration_from(phi), KY, filtration_from(psi), k,
                                       pair_from(direction, offset, scheme),
                                       FieldSpec{characteristic}));
      },
      py::arg("complex_x"), py::arg("values_x"), py::arg("complex_y"), py::arg("values_y"),
      py::arg("k"), py::arg("direction"), py::arg("offset"), py::arg("scheme") = "ladm",
      py::arg("characteristic") = 2);

  m.def(
      "dmatch_nd",
      [](const SimplicialComplex& KX, const std::vector<std::vector<double>>& phi,
         const SimplicialComplex& KY, const std::vector<std::vector<double>>& psi, unsigned k,
         const std::string& scheme, unsigned direction_resolution, unsigned offset_resolution,
         double offset_bound, std::uint32_t characteristic, unsigned threads) {
        auto phi_f = filtration_from(phi);
        auto psi_f = filtration_from(psi);
        GridSpec grid{direction_resolution, offset_resolution,
                      offset_bound > 0 ? offset_bound : default_offset_bound(phi_f, psi_f)};
        auto sup = dmatch_nd(KX, phi_f, KY, psi_f, k, parse_scheme(scheme), grid,
                             FieldSpec{characteristic}, threads);
        py::dict out;
        out["value"] = ext_to_py(sup.value);
        out["argmax_direction"] = sup.argmax.direction;
        out["argmax_offset"] = sup.argmax.offset;
        out["leaves"] = sup.leaves_evaluated;
        return out;
      },
      py::arg("complex_x"), py::arg("values_x"), py::arg("complex_y"), py::arg("values_y"),
      py::arg("k") = 0, py::arg("scheme") = "ladm", py::arg("direction_resolution") = 32,
      py::arg("offset_resolution") = 16, py::arg("offset_bound") = 0.0,
      py::arg("characteristic") = 2, py::arg("threads") = 0,
      "grid-sampled multidimensional matching distance (a lower bound for the sup)");

  m.def(
      "invariance_discrepancy",
      [](const SimplicialComplex& KX, const std::vector<std::vector<double>>& phi,
         const SimplicialComplex& KY, const std::vector<std::vector<double>>& psi, unsigned k,
         const std::vector<std::string>& schemes,
         const std::vector<std::pair<std::vector<double>, std::vector<double>>>& probes,
         unsigned direction_resolution, unsigned offset_resolution, double offset_bound,
         std::uint32_t characteristic) {
        auto phi_f = filtration_from(phi);
        auto psi_f = filtration_from(psi);
        std::vector<Scheme> parsed;
        for (const auto& s : schemes) parsed.push_back(parse_scheme(s));
        GridSpec grid{direction_resolution, offset_resolution,
                      offset_bound > 0 ? offset_bound : default_offset_bound(phi_f, psi_f)};
        auto report = invariance_report(KX, phi_f, KY, psi_f, k, parsed, probes, grid,
                                        FieldSpec{characteristic});
        py::dict out;
        out["max_probe_discrepancy"] = report.max_probe_discrepancy;
        out["grid_discrepancy"] = report.grid_discrepancy;
        out["max_discrepancy"] = report.max_discrepancy();
        return out;
      },
      py::arg("complex_x"), py::arg("values_x"), py::arg("complex_y"), py::arg("values_y"),
      py::arg("k"), py::arg("schemes"), py::arg("probes"), py::arg("direction_resolution") = 8,
      py::arg("offset_resolution") = 4, py::arg("offset_bound") = 0.0,
      py::arg("characteristic") = 2,
      "cross-scheme discrepancy of the per-leaf and grid-sampled distances");

#ifdef FOLIPERS_VERSION
  m.attr("__version__") = FOLIPERS_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
