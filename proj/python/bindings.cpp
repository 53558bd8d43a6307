#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "peripack/bounds.hpp"
#include "peripack/generators.hpp"
#include "peripack/json_io.hpp"
#include "peripack/svg.hpp"
#include "peripack/verifier.hpp"

namespace py = pybind11;
using namespace peripack;

namespace {

// The module speaks JSON strings: documents and reports cross the boundary in
// the same canonical form the CLI reads and writes.

std::string doc_str(const PackingDoc& doc) { return save_doc(doc); }

Body body_from_text(const std::string& text, double eps) {
  const OrderedJson j = OrderedJson::parse(text);
  try {
    return body_from_json(j, Mode::Exact, eps);
  } catch (const Error&) {
    return body_from_json(j, Mode::Float, eps);
  }
}

Scalar scalar_for_mode(double v, Mode m) {
  if (m == Mode::Float) return Scalar::real(v);
  const Rational r(v);  // exact binary expansion of the double
  return Scalar::exact(r);
}

}  // namespace

PYBIND11_MODULE(_peripack, m) {
  m.doc() = "packings of homothetic convex bodies: generators, verification, bounds";
  m.attr("__version__") = "1.0.0";

  py::register_exception<Error>(m, "PeripackError");

  m.def("gen_ford", [](unsigned long long Q) { return doc_str(gen_ford(Q)); },
        py::arg("Q"), "Ford disks with denominators up to Q (exact).");
  m.def("gen_apollonian_chain",
        [](double r1, double r2, size_t n) {
          return doc_str(gen_apollonian_chain(r1, r2, n));
        },
        py::arg("r1"), py::arg("r2"), py::arg("n"),
        "Chain of disks tangent to a line, largest-gap-first.");
  m.def("gen_greedy_square",
        [](size_t n) { return doc_str(gen_greedy_square(n)); }, py::arg("n"),
        "Greedy maximum-radius disk packing of the unit square.");
  m.def("gen_explicit_disks",
        [](int K) { return doc_str(gen_explicit_disks(K)); }, py::arg("K"),
        "Hierarchy of bottom-tangent disks with diameters 16^-k (exact).");
  m.def("gen_square_layers",
        [](int lam) { return doc_str(gen_square_layers(lam)); }, py::arg("lam"),
        "Nested layers of axis-aligned squares (exact).");
  m.def("gen_sloped_squares",
        [](double s, int depth) { return doc_str(gen_sloped_squares(s, depth)); },
        py::arg("s"), py::arg("depth"),
        "Recursive squares under the hypotenuse y = s*x.");
  m.def("gen_grid_translates",
        [](const std::string& body, const std::string& container, size_t n,
           double eps) {
          return doc_str(gen_grid_translates(
              body_from_text(body, eps),
              std::get<ConvexPolygon>(body_from_text(container, eps)), n));
        },
        py::arg("body"), py::arg("container"), py::arg("n"),
        py::arg("eps") = kDefaultEps,
        "n grid translates of the largest homothet per cell; body/container "
        "are body JSON objects.");
  m.def("gen_layers_general",
        [](const std::string& body, const std::string& container, size_t edge,
           int lam, double eps) {
          return doc_str(gen_layers_general(
              std::get<ConvexPolygon>(body_from_text(body, eps)),
              std::get<ConvexPolygon>(body_from_text(container, eps)), edge, lam));
        },
        py::arg("body"), py::arg("container"), py::arg("edge"), py::arg("lam"),
        py::arg("eps") = kDefaultEps,
        "Square layers mapped onto the maximal square over a container edge.");

  m.def("verify",
        [](const std::string& doc, bool require_boundary_contact, double eps) {
          return verify_packing(load_doc(doc, eps), require_boundary_contact)
              .to_json()
              .dump();
        },
        py::arg("doc"), py::arg("require_boundary_contact") = false,
        py::arg("eps") = kDefaultEps,
        "Containment / interior-disjointness report as JSON.");
  m.def("measure",
        [](const std::string& doc, double eps) {
          return packing_metrics(load_doc(doc, eps)).to_json().dump();
        },
        py::arg("doc"), py::arg("eps") = kDefaultEps,
        "Perimeter and escape metrics as JSON.");
  m.def("bound",
        [](const std::string& doc, const std::string& which,
           std::optional<double> esc, double eps) {
          return evaluate_bound(load_doc(doc, eps), which, esc).to_json().dump();
        },
        py::arg("doc"), py::arg("which"), py::arg("esc") = std::nullopt,
        py::arg("eps") = kDefaultEps,
        "Evaluate prop1|prop2|prop4|prop5|thm6 against measured perimeter.");
  m.def("dyadic_certificate",
        [](const std::string& doc, double eps) {
          return dyadic_certificate(load_doc(doc, eps)).to_json().dump();
        },
        py::arg("doc"), py::arg("eps") = kDefaultEps,
        "Perimeter classes against the reference body, as JSON.");
  m.def("depth_profile",
        [](const std::string& doc, size_t edge_index, double lam, double rho2,
           double eps) {
          const PackingDoc d = load_doc(doc, eps);
          return depth_profile(d, edge_index, scalar_for_mode(lam, d.mode()),
                               scalar_for_mode(rho2, d.mode()))
              .to_json()
              .dump();
        },
        py::arg("doc"), py::arg("edge_index"), py::arg("lam"), py::arg("rho2"),
        py::arg("eps") = kDefaultEps,
        "Projection depth profile along a container edge, as JSON.");
  m.def("eq12_check",
        [](const std::string& doc, size_t edge_index, int lam, double eps) {
          const PackingDoc d = load_doc(doc, eps);
          if (!d.reference()) throw Error("eq12: document has no reference body");
          const auto* ref = std::get_if<ConvexPolygon>(&*d.reference());
          if (!ref) throw Error("eq12: reference body must be a polygon");
          const Segment a = d.container().edge(edge_index);
          const Vec av = a.b - a.a;
          const Thm6Constants tc = thm6_constants(*ref, Direction{av.dx, av.dy});
          const DepthProfile prof = depth_profile(
              d, edge_index, Scalar::from_int(d.mode(), lam), tc.rho2);
          return check_eq12(prof, edge_length(a), lam).to_json().dump();
        },
        py::arg("doc"), py::arg("edge_index"), py::arg("lam"),
        py::arg("eps") = kDefaultEps,
        "Tail inequality over the depth profile with the given layer count.");

  m.def("render_svg",
        [](const std::string& doc, int width, double eps) {
          return render_svg(load_doc(doc, eps), width);
        },
        py::arg("doc"), py::arg("width") = 800, py::arg("eps") = kDefaultEps,
        "Deterministic SVG rendering of the packing.");

  m.def("fit_scaling",
        [](const std::vector<std::pair<double, double>>& samples,
           const std::string& model) {
          return fit_scaling(samples, fit_model_from_name(model)).to_json().dump();
        },
        py::arg("samples"), py::arg("model"),
        "Least squares of per against sqrt|log|loglog growth.");

  m.def("totient", &totient, py::arg("q"));
  m.def("totient_sum", &totient_sum, py::arg("Q"));
  m.def("totient_sq_sum",
        [](unsigned long long Q) { return rational_str(totient_sq_sum(Q)); },
        py::arg("Q"), "Sum of phi(q)/q^2 as an exact \"p/q\" string.");
}
