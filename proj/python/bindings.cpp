#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <sstream>

#include "lambdadyn/analysis.hpp"
#include "lambdadyn/commands.hpp"
#include "lambdadyn/config.hpp"
#include "lambdadyn/errors.hpp"
#include "lambdadyn/magnus.hpp"
#include "lambdadyn/model.hpp"
#include "lambdadyn/periodic.hpp"
#include "lambdadyn/rwa_oracle.hpp"
#include "lambdadyn/sweep.hpp"

namespace py = pybind11;
using namespace lambdadyn;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

CArray to_numpy(const ComplexMatrix& m) {
  CArray out({m.rows(), m.cols()});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) view(i, j) = m(i, j);
  }
  return out;
}

ComplexMatrix from_numpy(const CArray& a) {
  if (a.ndim() != 2) throw DimensionError("expected a 2-D array");
  const auto view = a.unchecked<2>();
  ComplexMatrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
  for (py::ssize_t i = 0; i < a.shape(0); ++i) {
    for (py::ssize_t j = 0; j < a.shape(1); ++j) m(i, j) = view(i, j);
  }
  return m;
}

Drive drive_from(const std::string& s) {
  if (s == "full") return Drive::Full;
  if (s == "rwa") return Drive::Rwa;
  throw ArgumentError("drive must be 'full' or 'rwa'");
}

MagnusOrder order_from(int order) {
  if (order == 4) return MagnusOrder::Order4;
  if (order == 6) return MagnusOrder::Order6;
  throw ArgumentError("order must be 4 or 6");
}

}  // namespace

PYBIND11_MODULE(_lambdadyn, m) {
  m.doc() = "Magnus-expansion dynamics of the driven three-level Lambda system";

  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<ConfigurationError>(m, "ConfigurationError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<LambdaParams>(m, "LambdaParams")
      .def(py::init<>())
      .def_readwrite("e1", &LambdaParams::e1)
      .def_readwrite("e2", &LambdaParams::e2)
      .def_readwrite("e3", &LambdaParams::e3)
      .def_readwrite("omega_p", &LambdaParams::omega_p)
      .def_readwrite("omega_c", &LambdaParams::omega_c)
      .def_readwrite("rabi_p", &LambdaParams::rabi_p)
      .def_readwrite("rabi_c", &LambdaParams::rabi_c)
      .def_readwrite("gamma_12", &LambdaParams::gamma_12)
      .def_readwrite("gamma_23", &LambdaParams::gamma_23)
      .def_readwrite("nbar_12", &LambdaParams::nbar_12)
      .def_readwrite("nbar_23", &LambdaParams::nbar_23)
      .def("validate", &LambdaParams::validate)
      .def("dissipative", &LambdaParams::dissipative)
      .def("__eq__", [](const LambdaParams& a, const LambdaParams& b) { return a == b; })
      .def("__repr__", [](const LambdaParams& p) {
        std::ostringstream s;
        s << "LambdaParams(e=(" << p.e1 << ", " << p.e2 << ", " << p.e3 << "), omega_p="
          << p.omega_p << ", omega_c=" << p.omega_c << ", rabi_p=" << p.rabi_p
          << ", rabi_c=" << p.rabi_c << ", gamma_12=" << p.gamma_12
          << ", gamma_23=" << p.gamma_23 << ")";
        return s.str();
      });

  m.def("table_case", [](const std::string& name) { return table_case(name); }, py::arg("name"));
  m.def("table_case_names", &table_case_names);

  m.def(
      "hamiltonian",
      [](const LambdaParams& p, double t, const std::string& drive) {
        return to_numpy(hamiltonian(p, t, drive_from(drive)));
      },
      py::arg("params"), py::arg("t"), py::arg("drive") = "full");
  m.def("h_rwf", [](const LambdaParams& p) { return to_numpy(h_rwf(p)); });
  m.def("expm", [](const CArray& a) { return to_numpy(expm(from_numpy(a))); });
  m.def("eig", [](const CArray& a) { return eig(from_numpy(a)); });

  m.def("commensurate_period", &commensurate_period, py::arg("omega_p"), py::arg("omega_c"));

  m.def(
      "one_period_propagator",
      [](const LambdaParams& p, const std::string& drive, int order, std::size_t steps,
         bool liouville) {
        const Generator g = liouville ? liouville_generator(p, drive_from(drive))
                                      : hilbert_generator(p, drive_from(drive));
        const PeriodicPlan plan = plan_for(p, g, steps);
        ComplexMatrix u;
        {
          py::gil_scoped_release release;
          u = one_period(g, plan, order_from(order)).u_period;
        }
        return py::make_tuple(to_numpy(u), plan.period());
      },
      py::arg("params"), py::arg("drive") = "full", py::arg("order") = 6,
      py::arg("steps_per_period") = kDefaultStepsPerPeriod, py::arg("liouville") = true);

  m.def(
      "run_case",
      [](const LambdaParams& p, double horizon, const std::string& drive, int order,
         std::size_t steps, const std::string& frame) {
        CaseOptions options;
        options.steps_per_period = steps;
        if (frame == "lab") {
          options.frame = Frame::Lab;
        } else if (frame == "rwf") {
          options.frame = Frame::Rotating;
        } else {
          throw ArgumentError("frame must be 'lab' or 'rwf'");
        }
        Trajectory traj;
        {
          py::gil_scoped_release release;
          traj = run_case(p, horizon, order_from(order), drive_from(drive), options);
        }
        const auto n = static_cast<py::ssize_t>(traj.size());
        py::array_t<double> times(n);
        CArray states({n, py::ssize_t{3}, py::ssize_t{3}});
        auto t = times.mutable_unchecked<1>();
        auto s = states.mutable_unchecked<3>();
        for (py::ssize_t k = 0; k < n; ++k) {
          t(k) = traj.times[k];
          for (py::ssize_t i = 0; i < 3; ++i) {
            for (py::ssize_t j = 0; j < 3; ++j) s(k, i, j) = traj.states[k](i, j);
          }
        }
        return py::make_tuple(times, states);
      },
      py::arg("params"), py::arg("horizon"), py::arg("drive") = "full", py::arg("order") = 6,
      py::arg("steps_per_period") = kDefaultStepsPerPeriod, py::arg("frame") = "rwf",
      "Returns (times, states) with states of shape (N, 3, 3).");

  m.def("lambda_eff", &lambda_eff);
  m.def("rwa_propagator_tpr",
        [](const LambdaParams& p, double t) { return to_numpy(rwa_propagator_tpr(p, t)); });
  m.def("rwa_density_tpr",
        [](const LambdaParams& p, double t) { return to_numpy(rwa_density_tpr(p, t).matrix()); });

  m.def("rwa_error", [](const CArray& a, const CArray& b) {
    return rwa_error(from_numpy(a), from_numpy(b));
  });
  m.def(
      "spectral_gap",
      [](const CArray& u, std::optional<double> period) {
        const GapReport r = spectral_gap(from_numpy(u), period);
        py::dict d;
        d["eigen_logs"] = r.eigen_logs;
        d["gap"] = r.gap;
        d["steady_index"] = r.steady_index;
        d["degenerate"] = r.degenerate;
        d["gap_per_time"] = r.gap_per_time;
        return d;
      },
      py::arg("u_period"), py::arg("period") = py::none());
  m.def("choi_matrix", [](const CArray& a) { return to_numpy(choi_matrix(from_numpy(a))); });
  m.def("cptp_check", [](const CArray& a) {
    const CptpReport r = cptp_check(from_numpy(a));
    py::dict d;
    d["trace_preserving"] = r.trace_preserving;
    d["trace_defect"] = r.trace_defect;
    d["completely_positive"] = r.completely_positive;
    d["min_choi_eigenvalue"] = r.min_choi_eigenvalue;
    return d;
  });
  m.def("density_validity", [](const CArray& a) {
    const ValidityReport r = density_validity(from_numpy(a));
    py::dict d;
    d["trace_defect"] = r.trace_defect;
    d["hermiticity_defect"] = r.hermiticity_defect;
    d["min_eigenvalue"] = r.min_eigenvalue;
    return d;
  });

  m.def(
      "run_command",
      [](const std::string& command, const std::string& config_text,
         const std::map<std::string, std::string>& overrides) {
        ConfigEntries entries;
        for (const auto& [k, v] : overrides) entries[k] = {v, 0};
        const RunConfig cfg = parse_config(config_text, entries);
        std::ostringstream err;
        int status = 0;
        {
          py::gil_scoped_release release;
          status = run_command(command, cfg, err);
        }
        return py::make_tuple(status, err.str());
      },
      py::arg("command"), py::arg("config_text") = "",
      py::arg("overrides") = std::map<std::string, std::string>{},
      "Runs a CLI subcommand; returns (exit_status, diagnostics).");
}
