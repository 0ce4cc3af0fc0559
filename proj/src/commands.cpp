#include "lambdadyn/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lambdadyn/analysis.hpp"
#include "lambdadyn/csv.hpp"
#include "lambdadyn/errors.hpp"
#include "lambdadyn/periodic.hpp"
#include "lambdadyn/sweep.hpp"

namespace lambdadyn {

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty() || cfg.out == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to stdout");
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + cfg.out + " for writing");
  file << text;
  file.close();
  if (!file) throw IoError("failed writing " + cfg.out);
}

template <class Body>
int guarded(std::string_view command, std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const IoError& e) {
    err << "lambdadyn " << command << ": I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ParseError& e) {
    err << "lambdadyn " << command << ": configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ConfigurationError& e) {
    err << "lambdadyn " << command << ": configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const PreconditionError& e) {
    err << "lambdadyn " << command << ": configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const HorizonError& e) {
    err << "lambdadyn " << command << ": numerical failure: " << e.what()
        << " (last delta " << format_double(e.last_delta()) << ")\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "lambdadyn " << command << ": numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

void write_metadata(CsvWriter& csv, const RunConfig& cfg, std::string_view command) {
  const LambdaParams& p = cfg.params;
  csv.comment("lambdadyn " + std::string(command));
  if (cfg.case_name) csv.comment("case = " + *cfg.case_name);
  const std::pair<const char*, double> fields[] = {
      {"e1", p.e1},           {"e2", p.e2},           {"e3", p.e3},
      {"omega_p", p.omega_p}, {"omega_c", p.omega_c}, {"rabi_p", p.rabi_p},
      {"rabi_c", p.rabi_c},   {"gamma_12", p.gamma_12}, {"gamma_23", p.gamma_23},
      {"nbar_12", p.nbar_12}, {"nbar_23", p.nbar_23}, {"delta_omega_p", cfg.delta_omega_p},
      {"delta_omega_c", cfg.delta_omega_c}};
  for (const auto& [name, value] : fields) {
    csv.comment(std::string(name) + " = " + format_double(value));
  }
  csv.comment("order = " + std::to_string(static_cast<int>(cfg.order)));
  csv.comment("steps_per_period = " + std::to_string(cfg.steps_per_period));
  csv.comment("drive = " + std::string(to_string(cfg.drive)));
  csv.comment("frame = " + std::string(to_string(cfg.frame)));
  if (cfg.timestamp) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    csv.comment(std::string("generated = ") + buf);
  }
}

std::string cell(double v) { return format_double(v); }

}  // namespace

int cmd_propagate(const RunConfig& cfg, std::ostream& err) {
  return guarded("propagate", err, [&] {
    const double period = commensurate_period(cfg.params.omega_p, cfg.params.omega_c);
    const double horizon = cfg.resolved_horizon(period);
    CaseOptions options;
    options.steps_per_period = cfg.steps_per_period;
    options.frame = cfg.frame;

    std::ostringstream text;
    CsvWriter csv(text);
    write_metadata(csv, cfg, "propagate");
    csv.comment("period = " + cell(period));
    csv.comment("horizon = " + cell(horizon));
    csv.header({"t", "rho11", "rho22", "rho33", "re_r12", "im_r12", "re_r13", "im_r13",
                "re_r23", "im_r23", "drive", "frame"});
    for (Drive d : drives_of(cfg.drive)) {
      const Trajectory traj = run_case(cfg.params, horizon, cfg.order, d, options);
      const std::string drive(to_string(d));
      const std::string frame(to_string(traj.frame));
      for (std::size_t i = 0; i < traj.size(); ++i) {
        const DensityMatrix& r = traj.states[i];
        csv.row({cell(traj.times[i]), cell(r(0, 0).real()), cell(r(1, 1).real()),
                 cell(r(2, 2).real()), cell(r(0, 1).real()), cell(r(0, 1).imag()),
                 cell(r(0, 2).real()), cell(r(0, 2).imag()), cell(r(1, 2).real()),
                 cell(r(1, 2).imag()), drive, frame});
      }
    }
    emit(cfg, text.str());
    return static_cast<int>(kExitOk);
  });
}

int cmd_sweep(const RunConfig& cfg, std::ostream& err) {
  return guarded("sweep", err, [&] {
    SweepSpec spec;
    spec.base = cfg.params;
    spec.order = cfg.order;
    spec.steps_per_period = cfg.steps_per_period;
    spec.eps_ss = cfg.eps_ss;
    spec.workers = cfg.workers;
    spec.drives = cfg.drive;
    spec.observables = cfg.observables;
    if (cfg.omega_c_range && cfg.omega_p_range) {
      spec.axis1 = *cfg.omega_c_range;
      spec.axis2 = *cfg.omega_p_range;
    } else if (cfg.omega_c_range) {
      spec.axis1 = *cfg.omega_c_range;
    } else if (cfg.omega_p_range) {
      spec.axis1 = *cfg.omega_p_range;
    } else {
      spec.axis1 = Axis{"omega_p", cfg.params.omega_p, cfg.params.omega_p, 1.0};
    }
    const SweepResult result = run_sweep(spec);

    auto wants = [&](Observable o) {
      return std::find(spec.observables.begin(), spec.observables.end(), o) !=
             spec.observables.end();
    };
    std::ostringstream text;
    CsvWriter csv(text);
    write_metadata(csv, cfg, "sweep");
    csv.comment("eps_ss = " + cell(spec.eps_ss));
    csv.comment("window = " + cell(spec.window));
    std::vector<std::string> header = {spec.axis1.parameter};
    if (spec.axis2) header.push_back(spec.axis2->parameter);
    header.insert(header.end(), {"drive", "status"});
    if (wants(Observable::Populations)) header.insert(header.end(), {"rho11", "rho22", "rho33"});
    if (wants(Observable::Coherences)) {
      header.insert(header.end(), {"re_r12", "im_r12", "re_r13", "im_r13", "re_r23", "im_r23"});
    }
    if (wants(Observable::RwaError)) header.push_back("rwa_error");
    if (wants(Observable::ConvergenceTime)) header.push_back("convergence_time");
    if (wants(Observable::SpectralGap)) header.push_back("spectral_gap");
    header.insert(header.end(), {"trace_defect", "period", "steps_per_period", "message"});
    csv.header(header);

    std::size_t failures = 0;
    for (const SweepRow& row : result.rows) {
      for (const DrivePoint& pt : row.points) {
        std::vector<std::string> cells = {cell(row.x1)};
        if (row.x2) cells.push_back(cell(*row.x2));
        cells.emplace_back(to_string(pt.drive));
        cells.emplace_back(pt.ok ? "ok" : "failed");
        auto num = [&](double v) { cells.push_back(pt.ok ? cell(v) : ""); };
        const ComplexMatrix& s = pt.steady;
        if (wants(Observable::Populations)) {
          for (std::size_t i = 0; i < kLevels; ++i) num(s(i, i).real());
        }
        if (wants(Observable::Coherences)) {
          for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
            num(s(i, j).real());
            num(s(i, j).imag());
          }
        }
        if (wants(Observable::RwaError)) {
          cells.push_back(row.rwa_error ? cell(*row.rwa_error) : "");
        }
        if (wants(Observable::ConvergenceTime)) num(pt.convergence_time);
        if (wants(Observable::SpectralGap)) num(pt.gap);
        num(pt.trace_defect);
        cells.push_back(pt.period > 0.0 ? cell(pt.period) : "");
        cells.push_back(pt.steps_per_period ? std::to_string(pt.steps_per_period) : "");
        cells.push_back(csv_field(pt.error));
        csv.row(cells);
        if (!pt.ok) ++failures;
      }
    }
    emit(cfg, text.str());
    if (failures) err << "lambdadyn sweep: " << failures << " grid point(s) failed\n";
    return static_cast<int>(kExitOk);
  });
}

int cmd_gap(const RunConfig& cfg, std::ostream& err) {
  return guarded("gap", err, [&] {
    std::ostringstream text;
    CsvWriter csv(text);
    write_metadata(csv, cfg, "gap");
    csv.header({"drive", "entry", "re", "im"});
    for (Drive d : drives_of(cfg.drive)) {
      const Generator g = liouville_generator(cfg.params, d, true, LiouvilleBasis::TraceAdapted);
      const PeriodicPlan plan = plan_for(cfg.params, g, cfg.steps_per_period);
      const OnePeriod one = one_period(g, plan, cfg.order);
      const GapReport report = spectral_gap(one.u_period, plan.period());
      const std::string drive(to_string(d));
      for (std::size_t i = 0; i < report.eigen_logs.size(); ++i) {
        csv.row({drive, std::to_string(i), cell(report.eigen_logs[i].real()),
                 cell(report.eigen_logs[i].imag())});
      }
      csv.row({drive, "gap", cell(report.gap), ""});
      csv.row({drive, "gap_per_time", cell(report.gap_per_time.value_or(0.0)), ""});
      csv.row({drive, "steady_index", std::to_string(report.steady_index), ""});
      csv.row({drive, "degenerate", report.degenerate ? "1" : "0", ""});
      csv.row({drive, "period", cell(plan.period()), ""});
    }
    emit(cfg, text.str());
    return static_cast<int>(kExitOk);
  });
}

int cmd_validate(const RunConfig& cfg, std::ostream& err) {
  return guarded("validate", err, [&] {
    std::ostringstream text;
    CsvWriter csv(text);
    write_metadata(csv, cfg, "validate");
    csv.header({"drive", "check", "value", "threshold", "status"});
    bool all_ok = true;
    auto check = [&](const std::string& drive, const char* name, double value, double threshold,
                     bool pass) {
      all_ok = all_ok && pass;
      csv.row({drive, name, cell(value), cell(threshold), pass ? "pass" : "FAIL"});
    };
    for (Drive d : drives_of(cfg.drive)) {
      const Generator g = liouville_generator(cfg.params, d, true, LiouvilleBasis::TraceAdapted);
      const PeriodicPlan plan = plan_for(cfg.params, g, cfg.steps_per_period);
      const OnePeriod one = one_period(g, plan, cfg.order);
      const CptpReport cptp = cptp_check(from_trace_basis(one.u_period));
      const std::string drive(to_string(d));
      check(drive, "map_trace_defect", cptp.trace_defect, kTraceDefectThreshold,
            cptp.trace_preserving);
      check(drive, "min_choi_eigenvalue", cptp.min_choi_eigenvalue, kChoiEigenvalueThreshold,
            cptp.completely_positive);

      const double horizon = cfg.resolved_horizon(plan.period());
      const auto n = static_cast<std::uint64_t>(
          std::max(1.0, std::round(horizon / plan.period())));
      const std::vector<Complex> c0 = to_trace_coordinates(DensityMatrix::pure_level(0).matrix());
      const ComplexMatrix rho = from_trace_coordinates(matrix_power(one.u_period, n) *
                                                       std::span<const Complex>(c0));
      const ValidityReport v = density_validity(rho);
      check(drive, "state_trace_defect", v.trace_defect, 1e-10, v.trace_defect <= 1e-10);
      check(drive, "state_hermiticity_defect", v.hermiticity_defect, 1e-10,
            v.hermiticity_defect <= 1e-10);
      check(drive, "state_min_eigenvalue", v.min_eigenvalue, -1e-9, v.min_eigenvalue >= -1e-9);
    }
    const std::string table = text.str();
    emit(cfg, table);
    if (!all_ok) {
      err << "lambdadyn validate: defects above threshold\n" << table;
      return static_cast<int>(kExitCheckFailed);
    }
    return static_cast<int>(kExitOk);
  });
}

int run_command(std::string_view name, const RunConfig& cfg, std::ostream& err) {
  if (name == "propagate") return cmd_propagate(cfg, err);
  if (name == "sweep") return cmd_sweep(cfg, err);
  if (name == "gap") return cmd_gap(cfg, err);
  if (name == "validate") return cmd_validate(cfg, err);
  err << "lambdadyn: unknown command '" << name << "'\n";
  return kExitConfig;
}

}  // namespace lambdadyn
