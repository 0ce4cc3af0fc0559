#pragma once

// Time-series runs for single parameter sets and steady-state parameter
// scans over one or two axes.

#include <optional>
#include <string>
#include <vector>

#include "lambdadyn/analysis.hpp"
#include "lambdadyn/magnus.hpp"
#include "lambdadyn/model.hpp"
#include "lambdadyn/periodic.hpp"

namespace lambdadyn {

enum class Space { Auto, Hilbert, Liouville };

struct CaseOptions {
  std::size_t steps_per_period = kDefaultStepsPerPeriod;
  Frame frame = Frame::Rotating;
  /// Auto: Hilbert space for closed parameters, Liouville space otherwise.
  Space space = Space::Auto;
};

/// Trajectory from |1><1| on the uniform grid t_s = s dt, s = 0..S with
/// S = floor(horizon/dt). Past the first period, states come from the
/// stroboscopic relation U(nT + t_k) = U(t_k) U(T)^n. horizon = 0 gives the
/// single initial sample. Throws ConfigurationError when no period exists.
Trajectory run_case(const LambdaParams& p, double horizon, MagnusOrder order, Drive drive,
                    const CaseOptions& options = {});

enum class DriveSelection { Full, Rwa, Both };
std::string_view to_string(DriveSelection d);
std::vector<Drive> drives_of(DriveSelection d);

struct Axis {
  std::string parameter;  // omega_p, omega_c, rabi_p, rabi_c, gamma_12, gamma_23
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  /// start, start + step, ... up to stop (inclusive within 1e-9 steps).
  std::vector<double> values() const;
  /// Throws ArgumentError for an unknown parameter, step <= 0 or start > stop.
  void validate() const;
};

/// Writes `value` into the named field.
void set_parameter(LambdaParams& p, std::string_view name, double value);

enum class Observable { Populations, Coherences, RwaError, ConvergenceTime, SpectralGap };
std::string_view to_string(Observable o);
Observable observable_from_string(std::string_view s);
std::vector<Observable> all_observables();

struct SweepSpec {
  LambdaParams base;
  Axis axis1;
  std::optional<Axis> axis2;
  std::vector<Observable> observables = all_observables();
  DriveSelection drives = DriveSelection::Both;
  MagnusOrder order = MagnusOrder::Order6;
  std::size_t steps_per_period = kDefaultStepsPerPeriod;
  double eps_ss = 1e-6;
  std::uint64_t max_periods = std::uint64_t{1} << 24;
  /// Steady-state averaging window.
  double window = 4.0 * kReferencePeriod;
  unsigned workers = 1;

  void validate() const;
};

struct DrivePoint {
  Drive drive = Drive::Full;
  bool ok = false;
  std::string error;
  /// Rotating-frame steady-state average over the window.
  ComplexMatrix steady = ComplexMatrix(kLevels, kLevels);
  double convergence_time = 0.0;
  double gap = 0.0;
  // diagnostics
  double trace_defect = 0.0;
  double period = 0.0;
  std::size_t steps_per_period = 0;
};

struct SweepRow {
  double x1 = 0.0;
  std::optional<double> x2;
  LambdaParams params;
  std::vector<DrivePoint> points;
  /// rwa_error(steady RWA, steady full) when both variants succeeded.
  std::optional<double> rwa_error;
};

struct SweepResult {
  SweepSpec spec;
  /// axis1 outer, axis2 inner.
  std::vector<SweepRow> rows;
};

/// Steady-state result for one parameter set and drive: convergence
/// detection on the one-period Liouville propagator followed by the window
/// average starting at the detected time. Failures are stored in the
/// returned point, never thrown.
DrivePoint steady_point(const LambdaParams& p, Drive drive, const SweepSpec& spec);

SweepResult run_sweep(const SweepSpec& spec);

}  // namespace lambdadyn
