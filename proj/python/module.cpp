#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "ccsim/classical.hpp"
#include "ccsim/errors.hpp"
#include "ccsim/harness.hpp"
#include "ccsim/quantum_protocols.hpp"
#include "ccsim/search.hpp"
#include "ccsim/task_json.hpp"
#include "ccsim/verify.hpp"

namespace py = pybind11;

namespace {

py::dict row_dict(const ccsim::EstimateRow& r) {
  py::dict d;
  d["protocol"] = r.protocol;
  d["input_id"] = r.input_id;
  d["trials"] = r.trials;
  d["estimate"] = r.estimate;
  d["std_err"] = r.std_err;
  d["exact"] = r.exact ? py::object(py::float_(*r.exact)) : py::object(py::none());
  d["abs_err"] = r.abs_err ? py::object(py::float_(*r.abs_err)) : py::object(py::none());
  d["bits_sent"] = r.resources.bits_sent;
  d["qubits_sent"] = r.resources.qubits_sent;
  d["ebits"] = r.resources.ebits;
  d["pass"] = r.pass;
  return d;
}

}  // namespace

PYBIND11_MODULE(_ccsim, m) {
  m.doc() = "Quantum and classical communication protocol simulator";

  py::register_exception<ccsim::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ccsim::ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<ccsim::CapacityError>(m, "CapacityError", PyExc_OverflowError);
  py::register_exception<ccsim::ProtocolMisuse>(m, "ProtocolMisuse", PyExc_RuntimeError);

  m.def("registered_protocols", [] {
    py::list out;
    for (const auto& e : ccsim::registered_protocols()) {
      py::dict d;
      d["name"] = e.name;
      d["inputs"] = e.inputs;
      d["summary"] = e.summary;
      out.append(d);
    }
    return out;
  });

  m.def(
      "run_experiment_json",
      [](const std::string& config_json) {
        auto cfg = ccsim::parse_experiment_config(config_json);
        ccsim::Report report;
        {
          py::gil_scoped_release release;
          report = ccsim::run_experiment(cfg);
        }
        py::list rows;
        for (const auto& r : report.rows) rows.append(row_dict(r));
        py::dict out;
        out["rows"] = rows;
        out["all_pass"] = report.all_pass();
        out["text"] = report.render();
        return out;
      },
      py::arg("config_json"), "Runs an experiment from an ExperimentConfig JSON document.");

  m.def(
      "verify",
      [](const std::string& suite) {
        py::list out;
        for (const auto& c : ccsim::run_verification(suite)) {
          py::dict d;
          d["suite"] = c.suite;
          d["name"] = c.name;
          d["measured"] = c.measured;
          d["bound"] = c.bound;
          d["basis"] = c.basis;
          d["passed"] = c.passed;
          out.append(d);
        }
        return out;
      },
      py::arg("suite") = "all");

  m.def(
      "fingerprint_prime",
      [](std::size_t n, const std::string& epsilon) {
        const auto p = ccsim::fingerprint_params(n, ccsim::Rational::parse(epsilon));
        return py::make_tuple(p.prime, p.element_bits);
      },
      py::arg("n"), py::arg("epsilon"));

  m.def(
      "epr_quantum_statistics",
      [](double x, double y) {
        const auto o = ccsim::epr_task_quantum(x, y, 0);
        const auto s = ccsim::epr_statistics(*o.exact_distribution);
        py::dict d;
        d["p_equal"] = s.p_equal;
        d["p_a_zero"] = s.p_a_zero;
        d["p_b_zero"] = s.p_b_zero;
        return d;
      },
      py::arg("x"), py::arg("y"));

  m.def(
      "dj_forbidden_mass",
      [](std::size_t k, const std::string& x, const std::string& y) {
        const auto inst = ccsim::DjInstance::make(k, ccsim::BitString::parse(x), ccsim::BitString::parse(y));
        const auto o = ccsim::dj_pseudo_telepathy(inst, 0);
        return py::make_tuple(ccsim::dj_forbidden_mass(inst, *o.exact_distribution),
                              o.channel.classical_bits_sent, o.channel.qubits_sent);
      },
      py::arg("k"), py::arg("x"), py::arg("y"));

  m.def(
      "chsh_feasibility",
      [](const std::array<double, 4>& p_equal) {
        const auto r = ccsim::chsh_feasibility(ccsim::CorrelationVector{p_equal});
        py::dict d;
        d["feasible"] = r.feasible;
        d["max_chsh"] = r.max_chsh;
        d["correlators"] = r.correlators;
        d["violated_inequality"] = r.violated_inequality;
        return d;
      },
      py::arg("p_equal"));

  m.def(
      "zero_comm_optimum",
      [](const std::string& task) {
        const auto req = ccsim::builtin_task(task);
        const auto* spec = std::get_if<ccsim::TaskSpec>(&req);
        if (!spec) throw ccsim::ArgumentError("zero_comm_optimum: \"" + task + "\" is not a relation task");
        const auto r = ccsim::best_zero_comm(*spec);
        return py::make_tuple(r.success, r.perfect);
      },
      py::arg("task"));

  m.def(
      "bounded_comm_optimum",
      [](const std::string& task, std::size_t budget) {
        const auto req = ccsim::builtin_task(task);
        const auto* spec = std::get_if<ccsim::TaskSpec>(&req);
        if (!spec) throw ccsim::ArgumentError("bounded_comm_optimum: \"" + task + "\" is not a relation task");
        return ccsim::best_bounded_comm(*spec, budget).success;
      },
      py::arg("task"), py::arg("budget"));
}
