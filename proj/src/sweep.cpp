#include "lambdadyn/sweep.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "lambdadyn/errors.hpp"

namespace lambdadyn {

namespace {

Generator generator_for(const LambdaParams& p, Drive drive, Space space) {
  const bool liouville =
      space == Space::Liouville || (space == Space::Auto && p.dissipative());
  if (!liouville) return hilbert_generator(p, drive);
  return liouville_generator(p, drive, true, LiouvilleBasis::TraceAdapted);
}

// Propagators U(t_k, 0) for k = 0..count on the plan's grid.
std::vector<ComplexMatrix> micromotion(const Generator& g, const PeriodicPlan& plan,
                                       MagnusOrder order, std::size_t count) {
  const double dt = plan.dt();
  std::vector<ComplexMatrix> out;
  out.reserve(count + 1);
  out.push_back(ComplexMatrix::identity(g.dimension()));
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(step(g, static_cast<double>(k) * dt, dt, order) * out.back());
  }
  return out;
}

std::vector<Complex> encode(const ComplexMatrix& rho, std::size_t dim, LiouvilleBasis basis) {
  if (dim == kLevels) return {};
  return basis == LiouvilleBasis::TraceAdapted ? to_trace_coordinates(rho) : vec(rho);
}

ComplexMatrix decode(std::span<const Complex> c, LiouvilleBasis basis) {
  return basis == LiouvilleBasis::TraceAdapted ? from_trace_coordinates(c) : unvec(c);
}

}  // namespace

Trajectory run_case(const LambdaParams& p, double horizon, MagnusOrder order, Drive drive,
                    const CaseOptions& options) {
  p.validate();
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) {
    throw ArgumentError("run_case: horizon must be finite and non-negative");
  }
  const ComplexMatrix rho0 = DensityMatrix::pure_level(0).matrix();
  Trajectory traj;
  traj.frame = Frame::Lab;
  if (horizon == 0.0) {
    traj.times.push_back(0.0);
    traj.states.push_back(DensityMatrix::unchecked(rho0));
    return traj.in_frame(options.frame, p);
  }

  const Generator g = generator_for(p, drive, options.space);
  const PeriodicPlan plan = plan_for(p, g, options.steps_per_period);
  const std::size_t n_grid = plan.steps_per_period();
  const double dt = plan.dt();
  const auto last = static_cast<std::size_t>(std::floor(horizon / dt + 1e-9));
  const std::vector<ComplexMatrix> micro = micromotion(g, plan, order, std::min(last, n_grid));

  const LiouvilleBasis basis = g.basis();
  const bool hilbert = g.dimension() == kLevels;
  ComplexMatrix u_n = ComplexMatrix::identity(g.dimension());  // U(T)^n
  std::vector<Complex> c_n = encode(rho0, g.dimension(), basis);
  ComplexMatrix rho_n = rho0;  // state at nT, Hilbert path

  traj.times.reserve(last + 1);
  traj.states.reserve(last + 1);
  std::size_t period_index = 0;
  for (std::size_t s = 0; s <= last; ++s) {
    const std::size_t n = s / n_grid;
    const std::size_t k = s % n_grid;
    while (period_index < n) {
      if (hilbert) {
        u_n = micro.back() * u_n;
        rho_n = u_n * rho0 * u_n.adjoint();
      } else {
        c_n = micro.back() * std::span<const Complex>(c_n);
      }
      ++period_index;
    }
    ComplexMatrix rho = hilbert ? evolve_state(micro[k], rho_n)
                                : decode(micro[k] * std::span<const Complex>(c_n), basis);
    traj.times.push_back(static_cast<double>(s) * dt);
    traj.states.push_back(DensityMatrix::unchecked(std::move(rho)));
  }
  return traj.in_frame(options.frame, p);
}

std::string_view to_string(DriveSelection d) {
  switch (d) {
    case DriveSelection::Full:
      return "full";
    case DriveSelection::Rwa:
      return "rwa";
    case DriveSelection::Both:
      break;
  }
  return "both";
}

std::vector<Drive> drives_of(DriveSelection d) {
  switch (d) {
    case DriveSelection::Full:
      return {Drive::Full};
    case DriveSelection::Rwa:
      return {Drive::Rwa};
    case DriveSelection::Both:
      break;
  }
  return {Drive::Full, Drive::Rwa};
}

std::vector<double> Axis::values() const {
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

void Axis::validate() const {
  LambdaParams probe;
  set_parameter(probe, parameter, 0.0);
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step)) {
    throw ArgumentError("axis " + parameter + ": bounds must be finite");
  }
  if (!(step > 0.0)) throw ArgumentError("axis " + parameter + ": step must be positive");
  if (start > stop) throw ArgumentError("axis " + parameter + ": start exceeds stop");
}

void set_parameter(LambdaParams& p, std::string_view name, double value) {
  if (name == "omega_p") {
    p.omega_p = value;
  } else if (name == "omega_c") {
    p.omega_c = value;
  } else if (name == "rabi_p") {
    p.rabi_p = value;
  } else if (name == "rabi_c") {
    p.rabi_c = value;
  } else if (name == "gamma_12") {
    p.gamma_12 = value;
  } else if (name == "gamma_23") {
    p.gamma_23 = value;
  } else {
    throw ArgumentError("unknown sweep parameter '" + std::string(name) + "'");
  }
}

std::string_view to_string(Observable o) {
  switch (o) {
    case Observable::Populations:
      return "populations";
    case Observable::Coherences:
      return "coherences";
    case Observable::RwaError:
      return "rwa_error";
    case Observable::ConvergenceTime:
      return "convergence_time";
    case Observable::SpectralGap:
      break;
  }
  return "spectral_gap";
}

Observable observable_from_string(std::string_view s) {
  for (Observable o : all_observables()) {
    if (to_string(o) == s) return o;
  }
  throw ArgumentError("unknown observable '" + std::string(s) + "'");
}

std::vector<Observable> all_observables() {
  return {Observable::Populations, Observable::Coherences, Observable::RwaError,
          Observable::ConvergenceTime, Observable::SpectralGap};
}

void SweepSpec::validate() const {
  base.validate();
  axis1.validate();
  if (axis2) {
    axis2->validate();
    if (axis2->parameter == axis1.parameter) {
      throw ArgumentError("sweep axes must name different parameters");
    }
  }
  if (steps_per_period == 0) throw ArgumentError("steps_per_period must be >= 1");
  if (!(eps_ss > 0.0)) throw ArgumentError("eps_ss must be positive");
  if (!(window > 0.0)) throw ArgumentError("window must be positive");
  if (max_periods == 0) throw ArgumentError("max_periods must be >= 1");
}

DrivePoint steady_point(const LambdaParams& p, Drive drive, const SweepSpec& spec) {
  DrivePoint point;
  point.drive = drive;
  try {
    p.validate();
    const Generator g = liouville_generator(p, drive, true, LiouvilleBasis::TraceAdapted);
    const PeriodicPlan plan = plan_for(p, g, spec.steps_per_period);
    point.period = plan.period();
    point.steps_per_period = plan.steps_per_period();
    const OnePeriod one = one_period(g, plan, spec.order);

    point.gap = spectral_gap(one.u_period, plan.period()).gap;
    const ComplexMatrix rho0 = DensityMatrix::pure_level(0).matrix();
    ConvergenceOptions copts;
    copts.eps = spec.eps_ss;
    copts.max_periods = spec.max_periods;
    point.convergence_time =
        convergence_time(one, plan, rho0, LiouvilleBasis::TraceAdapted, copts);
    const auto n = static_cast<std::uint64_t>(std::llround(point.convergence_time / plan.period()));

    std::vector<Complex> c = matrix_power(one.u_period, n) *
                             std::span<const Complex>(to_trace_coordinates(rho0));
    point.trace_defect = std::abs(from_trace_coordinates(c).trace() - 1.0);

    const std::size_t n_grid = plan.steps_per_period();
    const double dt = plan.dt();
    const auto intervals = static_cast<std::size_t>(std::llround(spec.window / dt));
    Trajectory window;
    window.frame = Frame::Rotating;
    window.times.reserve(intervals + 1);
    window.states.reserve(intervals + 1);
    for (std::size_t s = 0; s <= intervals; ++s) {
      if (s > 0 && s % n_grid == 0) c = one.u_period * std::span<const Complex>(c);
      const std::size_t k = s % n_grid;
      const ComplexMatrix lab = from_trace_coordinates(one.micromotion[k] * std::span<const Complex>(c));
      // W(t) has period T, so the intra-period time suffices
      window.times.push_back(static_cast<double>(s) * dt);
      window.states.push_back(
          DensityMatrix::unchecked(rwf_transform(lab, p, static_cast<double>(k) * dt)));
    }
    point.steady = steady_state_average(window, static_cast<double>(intervals) * dt).matrix();
    point.ok = true;
  } catch (const std::exception& e) {
    point.ok = false;
    point.error = e.what();
  }
  return point;
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepResult result;
  result.spec = spec;
  const std::vector<double> xs = spec.axis1.values();
  const std::vector<double> ys = spec.axis2 ? spec.axis2->values() : std::vector<double>{};
  for (double x : xs) {
    if (spec.axis2) {
      for (double y : ys) {
        SweepRow row;
        row.x1 = x;
        row.x2 = y;
        result.rows.push_back(std::move(row));
      }
    } else {
      SweepRow row;
      row.x1 = x;
      result.rows.push_back(std::move(row));
    }
  }
  for (SweepRow& row : result.rows) {
    row.params = spec.base;
    set_parameter(row.params, spec.axis1.parameter, row.x1);
    if (row.x2) set_parameter(row.params, spec.axis2->parameter, *row.x2);
  }

  const std::vector<Drive> drives = drives_of(spec.drives);
  auto work = [&](SweepRow& row) {
    for (Drive d : drives) row.points.push_back(steady_point(row.params, d, spec));
    if (row.points.size() == 2 && row.points[0].ok && row.points[1].ok) {
      try {
        row.rwa_error = rwa_error(row.points[1].steady, row.points[0].steady);
      } catch (const std::exception&) {
        row.rwa_error.reset();
      }
    }
  };

  const unsigned workers =
      std::max(1u, std::min<unsigned>(spec.workers, static_cast<unsigned>(result.rows.size())));
  if (workers == 1) {
    for (SweepRow& row : result.rows) work(row);
    return result;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < result.rows.size(); i = next++) work(result.rows[i]);
    });
  }
  pool.clear();
  return result;
}

}  // namespace lambdadyn
