#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kstab/job.hpp"
#include "kstab/parser.hpp"
#include "kstab/stability.hpp"

namespace py = pybind11;
using namespace kstab;

namespace {

Ideal make_ideal(const RingPtr& ring, const std::vector<std::string>& gens) {
  std::vector<Polynomial> polys;
  for (const auto& g : gens) polys.push_back(parse_polynomial(g, ring));
  return polys.empty() ? Ideal::zero(ring) : Ideal(ring, std::move(polys));
}

std::pair<std::string, int> run(const std::string& text, std::optional<std::uint64_t> seed) {
  RunOptions options;
  options.seed = seed;
  const Report report = run_job(parse_job(text), options);
  return {render_json(report), report.exit_code};
}

std::string slope(const std::vector<std::string>& variables, const std::vector<std::string>& ideal, long d) {
  const RingPtr R = Ring::standard(variables);
  return to_string(slope_mu(make_variety(make_ideal(R, ideal), d)));
}

std::map<std::string, std::string> df(const std::vector<std::string>& variables, const std::vector<std::string>& variety,
                                      const std::vector<std::string>& subscheme, const std::string& c, long d) {
  const RingPtr R = Ring::standard(variables);
  const VarietySpec V = make_variety(make_ideal(R, variety), d);
  const SubschemeSpec Z = make_subscheme(V, make_ideal(R, subscheme));
  const DFResult r = df_normal_cone(V, Z, parse_rational(c));
  return {{"a0", to_string(r.a0)}, {"a1", to_string(r.a1)}, {"w0", to_string(r.w0)}, {"w1", to_string(r.w1)},
          {"b0", to_string(r.b0)}, {"b1", to_string(r.b1)}, {"df", to_string(r.df)}, {"cm", to_string(r.cm)}};
}

py::dict power(const std::vector<std::string>& variables, const std::vector<std::string>& ideal,
               const std::vector<std::string>& center, long m_max) {
  const RingPtr R = Ring::standard(variables);
  const PowerCompatReport r = power_compat(make_ideal(R, ideal), make_ideal(R, center), m_max);
  py::dict out;
  out["holds"] = r.holds;
  out["checked"] = r.checked;
  out["failing"] = r.holds ? py::object(py::none()) : py::object(py::make_tuple(*r.failing_m, *r.failing_j));
  out["certificate"] = r.certificate ? py::object(py::str(r.certificate->to_string())) : py::object(py::none());
  return out;
}

py::int_ dimension(const std::vector<std::string>& variables, const std::vector<std::string>& ideal, long degree) {
  const RingPtr R = Ring::standard(variables);
  const Integer n = graded_dimension(make_ideal(R, ideal), {degree});
  return py::int_(py::reinterpret_steal<py::object>(PyLong_FromString(n.get_str().c_str(), nullptr, 10)));
}

std::string hilbert(const std::vector<std::string>& variables, const std::vector<std::string>& ideal, bool saturate) {
  const RingPtr R = Ring::standard(variables);
  return hilbert_polynomial(make_ideal(R, ideal), {1}, 1, saturate).poly.to_string("k");
}

}  // namespace

PYBIND11_MODULE(_kstab, m) {
  m.doc() = "Exact stability invariants of polarized schemes";

  static py::exception<InputError> input_error(m, "InputError", PyExc_ValueError);
  static py::exception<BudgetExceeded> budget_error(m, "BudgetExceeded", PyExc_RuntimeError);
  static py::exception<InvariantViolation> invariant_error(m, "InvariantViolation", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InputError& e) {
      input_error(e.what());
    } catch (const BudgetExceeded& e) {
      budget_error(e.what());
    } catch (const InvariantViolation& e) {
      invariant_error(e.what());
    }
  });

  m.def("run_job", &run, py::arg("text"), py::arg("seed") = py::none(),
        "Run a JSON job document; returns (report_json, exit_code).");
  m.def("slope", &slope, py::arg("variables"), py::arg("ideal"), py::arg("d") = 1);
  m.def("df", &df, py::arg("variables"), py::arg("variety"), py::arg("subscheme"), py::arg("c"), py::arg("d") = 1);
  m.def("power_compat", &power, py::arg("variables"), py::arg("ideal"), py::arg("center"), py::arg("m_max"));
  m.def("graded_dimension", &dimension, py::arg("variables"), py::arg("ideal"), py::arg("degree"));
  m.def("hilbert_polynomial", &hilbert, py::arg("variables"), py::arg("ideal"), py::arg("saturate") = false);
  m.attr("job_kinds") = job_kinds();
}
