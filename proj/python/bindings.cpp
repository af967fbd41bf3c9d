#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zerodist/analysis.hpp"
#include "zerodist/families.hpp"

namespace py = pybind11;
using namespace zerodist;

namespace {

// Reports cross the boundary as JSON text; the Python side parses it.
std::string report_text(const AnalysisReport& r) { return dump_report(to_json(r)); }

FamilySpec make_spec(const std::string& kind, std::optional<int> n, std::optional<long long> p,
                     std::optional<double> c, std::optional<std::uint64_t> seed) {
  FamilySpec s;
  s.kind = parse_family_kind(kind);
  s.N = n;
  s.p = p;
  s.c = c;
  s.seed = seed;
  return s;
}

AnalysisOptions options_with_tol(double tol) {
  AnalysisOptions o;
  o.root_tol = tol;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Zero distribution statistics and certificates for complex polynomials";

  py::register_exception<RootFindError>(m, "RootFindError", PyExc_RuntimeError);

  m.def(
      "find_roots",
      [](const std::vector<Complex>& coeffs, double tol) {
        std::vector<std::tuple<double, double, int>> out;
        for (const Root& r : find_roots(Polynomial(coeffs), tol).entries)
          out.emplace_back(r.modulus, r.angle, r.multiplicity);
        return out;
      },
      py::arg("coeffs"), py::arg("tol") = 1e-13,
      "Roots of Σ coeffs[j] z^j as (modulus, angle, multiplicity) tuples sorted by angle.");

  m.def(
      "discrepancy",
      [](std::vector<double> angles, std::vector<int> multiplicities) {
        const Discrepancy d = discrepancy(UnitAngleSet::from_angles(std::move(angles), std::move(multiplicities)));
        py::dict out;
        out["value"] = d.value;
        out["excess"] = d.excess;
        out["deficit"] = d.deficit;
        return out;
      },
      py::arg("angles"), py::arg("multiplicities") = std::vector<int>{},
      "Angular discrepancy of a multiset of angles on the unit circle.");

  m.def(
      "analyze_coeffs_json",
      [](const std::vector<Complex>& coeffs, const std::string& label, double tol) {
        AnalysisReport r;
        {
          py::gil_scoped_release release;
          r = analyze(Polynomial(coeffs), label, 0, options_with_tol(tol));
        }
        return report_text(r);
      },
      py::arg("coeffs"), py::arg("label") = "python", py::arg("tol") = 1e-13);

  m.def(
      "analyze_family_json",
      [](const std::string& kind, std::optional<int> n, std::optional<long long> p, std::optional<double> c,
         std::optional<std::uint64_t> seed, double tol) {
        const FamilySpec spec = make_spec(kind, n, p, c, seed);
        AnalysisReport r;
        {
          py::gil_scoped_release release;
          r = analyze(spec, options_with_tol(tol));
        }
        return report_text(r);
      },
      py::arg("kind"), py::arg("N") = py::none(), py::arg("p") = py::none(), py::arg("c") = py::none(),
      py::arg("seed") = py::none(), py::arg("tol") = 1e-13);

  m.def(
      "family_coeffs",
      [](const std::string& kind, std::optional<int> n, std::optional<long long> p, std::optional<double> c,
         std::optional<std::uint64_t> seed) {
        const FamilyMember f = generate(make_spec(kind, n, p, c, seed));
        return std::make_pair(std::vector<Complex>(f.poly.coeffs().begin(), f.poly.coeffs().end()),
                              f.deflation_order);
      },
      py::arg("kind"), py::arg("N") = py::none(), py::arg("p") = py::none(), py::arg("c") = py::none(),
      py::arg("seed") = py::none(), "Coefficients (low to high) and the power of z divided out.");

  m.def(
      "render_svg",
      [](const std::string& report_json, const std::string& title) {
        return render_svg(roots_from_report(nlohmann::json::parse(report_json)), title);
      },
      py::arg("report_json"), py::arg("title"));

  m.attr("REPORT_SCHEMA_VERSION") = kReportSchemaVersion;
}
