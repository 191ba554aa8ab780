#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "bskernel/errors.hpp"
#include "bskernel/geometric_analysis.hpp"
#include "bskernel/kernel.hpp"
#include "bskernel/special_functions.hpp"
#include "bskernel/threshold_solver.hpp"

namespace py = pybind11;
using namespace bskernel;

namespace {

EvalMethod method_from(const std::string& name) {
  const auto m = parse_eval_method(name);
  if (!m) throw InputError("unknown method '" + name + "'");
  return *m;
}

Lemma lemma_from(const std::string& name) {
  const auto l = parse_lemma(name);
  if (!l) throw InputError("unknown lemma '" + name + "'");
  return *l;
}

Property property_from(const std::string& name) {
  const auto p = parse_property(name);
  if (!p) throw InputError("unknown property '" + name + "'");
  return *p;
}

Subject subject_from(const std::string& name) {
  if (name == "zB") return Subject::f_equals_zB;
  if (name == "h") return Subject::h_normalized_B;
  throw InputError("unknown subject '" + name + "' (expected zB or h)");
}

py::dict certificate_dict(const CertificateReport& r) {
  py::list checks;
  for (const auto& c : r.checks) {
    py::dict d;
    d["n"] = c.n;
    d["condition"] = c.condition;
    d["margin"] = c.margin;
    d["status"] = std::string(to_string(c.status));
    checks.append(d);
  }
  py::dict out;
  out["lemma"] = std::string(to_string(r.lemma));
  out["n_checked"] = r.n_checked;
  out["passed"] = r.passed;
  out["first_violation"] = r.first_violation ? py::cast(*r.first_violation) : py::none();
  out["checks"] = checks;
  return out;
}

DiskGrid grid_from(const std::optional<std::string>& spec, double radius_max) {
  return spec ? DiskGrid::from_spec(*spec, radius_max) : DiskGrid::default_grid();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bessel-Struve kernel evaluation and univalence certificates";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<BracketError>(m, "BracketError", PyExc_ValueError);
  py::register_exception<OverflowError>(m, "OverflowError", PyExc_OverflowError);

  m.def("ln_gamma", &ln_gamma, py::arg("x"));
  m.def("gamma", [](double x) { return bskernel::gamma(x); }, py::arg("x"));
  m.def("digamma", &digamma, py::arg("x"));
  m.def(
      "modified_bessel_i", [](double nu, cdouble z) { return modified_bessel_i(Order{nu}, z); },
      py::arg("nu"), py::arg("z"), "I_nu(z) / (z/2)^nu");
  m.def(
      "modified_struve_l", [](double nu, cdouble z) { return modified_struve_l(Order{nu}, z); },
      py::arg("nu"), py::arg("z"), "L_nu(z) / (z/2)^nu");

  m.def(
      "bs_eval",
      [](double nu, cdouble z, const std::string& method) {
        return bs_eval(Order{nu}, z, method_from(method));
      },
      py::arg("nu"), py::arg("z"), py::arg("method") = "series");
  m.def(
      "bs_derivative",
      [](double nu, cdouble z, int order) { return bs_derivative(Order{nu}, z, order); },
      py::arg("nu"), py::arg("z"), py::arg("order") = 1);
  m.def(
      "bs_coefficient", [](double nu, int n) { return bs_coefficient(Order{nu}, n); },
      py::arg("nu"), py::arg("n"));
  m.def(
      "coefficients",
      [](double nu, int n_max) {
        const CoefficientTable t = coefficient_table(Order{nu}, n_max);
        std::vector<double> a;
        for (int n = 1; n <= t.size(); ++n) a.push_back(t.a(n));
        return a;
      },
      py::arg("nu"), py::arg("n_max"), "a_1..a_N of z B_nu(z)");
  m.def(
      "recurrence_residual", [](double nu, cdouble z) { return recurrence_residual(Order{nu}, z); },
      py::arg("nu"), py::arg("z"));
  m.def(
      "prop1_residual", [](double nu, cdouble z) { return prop1_residual(Order{nu}, z); },
      py::arg("nu"), py::arg("z"));
  m.def(
      "ode_residual", [](double nu, cdouble z) { return ode_residual(Order{nu}, z); },
      py::arg("nu"), py::arg("z"));

  m.def(
      "certify",
      [](double nu, const std::string& lemma, int n_max) {
        return certificate_dict(certify(lemma_from(lemma), coefficient_table(Order{nu}, n_max)));
      },
      py::arg("nu"), py::arg("lemma"), py::arg("n_max") = 200);

  m.def(
      "margin_scan",
      [](double nu, const std::string& property, double lambda, double beta,
         const std::string& subject, std::optional<std::string> grid, double radius_max) {
        const MarginReport r = margin_scan(Order{nu}, property_from(property), lambda, beta,
                                           grid_from(grid, radius_max), subject_from(subject));
        py::dict d;
        d["property"] = std::string(to_string(r.property));
        d["lambda"] = r.lambda;
        d["beta"] = r.beta;
        d["threshold"] = r.threshold;
        d["extremal_value"] = r.extremal_value;
        d["extremal_margin"] = r.extremal_margin;
        d["argmin"] = r.argmin_point;
        d["grid"] = r.grid;
        d["label"] = std::string(MarginReport::kEvidenceLabel);
        return d;
      },
      py::arg("nu"), py::arg("property"), py::arg("lambda_") = 0.0, py::arg("beta") = 0.0,
      py::arg("subject") = "zB", py::arg("grid") = py::none(), py::arg("radius_max") = 0.999);

  m.def("nu0_objective", &nu0_objective, py::arg("nu"));
  m.def(
      "find_nu0",
      [](double tol, double lo, double hi) { return find_nu0(nu0_bracket(lo, hi, tol), tol); },
      py::arg("tol") = 1e-10, py::arg("lo") = 0.0, py::arg("hi") = 30.0);

  m.def(
      "scan_nu",
      [](double nu_min, double nu_max, double step, int n_max, std::optional<std::string> grid) {
        py::list rows;
        for (const ScanRow& r :
             scan_nu(nu_min, nu_max, step, grid_from(grid, 0.999), n_max)) {
          py::dict d;
          d["nu"] = r.nu;
          d["acharya"] = r.acharya;
          d["ms_two_six"] = r.ms_two_six;
          d["cc_odd"] = r.cc_odd;
          d["starlike_margin"] = r.numeric_margin;
          d["error"] = r.error ? py::cast(*r.error) : py::none();
          rows.append(d);
        }
        return rows;
      },
      py::arg("nu_min"), py::arg("nu_max"), py::arg("step"), py::arg("n_max") = 200,
      py::arg("grid") = py::none());
}
