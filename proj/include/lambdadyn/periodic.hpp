#pragma once

// Periodic-drive acceleration: one-period propagators, stroboscopic jumps
// U(nT + t_k) = U(t_k) U(T)^n, repeated squaring toward the steady state,
// trapezoid steady-state averages and convergence-time detection.

#include <cstdint>
#include <vector>

#include "lambdadyn/magnus.hpp"
#include "lambdadyn/model.hpp"

namespace lambdadyn {

/// Period and uniform step grid for one period of a T-periodic generator.
class PeriodicPlan {
 public:
  /// Checks A(t + T) = A(t) at 16 pseudo-random probe times (relative
  /// tolerance 1e-12); throws ConfigurationError if the generator is not
  /// periodic with the given T.
  PeriodicPlan(const Generator& g, double period, std::size_t steps_per_period);

  double period() const noexcept { return period_; }
  std::size_t steps_per_period() const noexcept { return steps_; }
  double dt() const noexcept { return period_ / static_cast<double>(steps_); }
  /// Intra-period grid time t_k = k T / N, k = 0..N.
  double grid_time(std::size_t k) const noexcept { return static_cast<double>(k) * dt(); }

 private:
  double period_;
  std::size_t steps_;
};

inline constexpr double kReferencePeriod = 6.283185307179586;  // 2 pi
inline constexpr std::size_t kDefaultStepsPerPeriod = 8191;    // 2^13 - 1
inline constexpr std::size_t kMaxStepsPerPeriod = 1'000'000;

/// Smallest T >= 2 pi such that omega_p T / 2pi and omega_c T / 2pi are both
/// integers. Frequencies are resolved as rationals with denominators up to
/// 10^4. Throws ConfigurationError when no such period exists.
double commensurate_period(double omega_p, double omega_c);

/// Plan for a Lambda-system generator: commensurate period, with the step
/// count scaled so that dt stays at 2 pi / base_steps. Throws
/// ConfigurationError above kMaxStepsPerPeriod steps.
PeriodicPlan plan_for(const LambdaParams& p, const Generator& g,
                      std::size_t base_steps = kDefaultStepsPerPeriod);

struct OnePeriod {
  ComplexMatrix u_period;
  /// micromotion[k] = U(t_k, 0) for k = 0..N; front() is the identity and
  /// back() is u_period.
  std::vector<ComplexMatrix> micromotion;
};

OnePeriod one_period(const Generator& g, const PeriodicPlan& plan, MagnusOrder order);

/// micromotion[k] * U_T^n. Throws ArgumentError if k is out of range.
ComplexMatrix stroboscopic(const ComplexMatrix& u_period,
                           const std::vector<ComplexMatrix>& micromotion, std::uint64_t n,
                           std::size_t k);

/// U_T^(2^m) by m squarings.
ComplexMatrix doubling(const ComplexMatrix& u_period, unsigned m);

/// Applies a propagator to a state: U rho U^dagger for a 3x3 propagator,
/// unvec(M vec(rho)) for a 9x9 one in the given Liouville basis.
ComplexMatrix evolve_state(const ComplexMatrix& propagator, const ComplexMatrix& rho,
                           LiouvilleBasis basis = LiouvilleBasis::Standard);

enum class Frame { Lab, Rotating };
std::string_view to_string(Frame f);

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  Frame frame = Frame::Lab;

  std::size_t size() const noexcept { return times.size(); }
  /// Re-expresses the states in another frame (rwf_transform or its inverse).
  Trajectory in_frame(Frame target, const LambdaParams& p) const;
  /// Throws ArgumentError unless times are strictly increasing and each
  /// state is Hermitian, unit trace and PSD within psd_slack.
  void validate(double psd_slack = 1e-7) const;
};

/// Trapezoid time average of every element over the trailing `window` of a
/// uniformly sampled trajectory. The result is renormalized to unit trace
/// when the raw trace drifts by at most 1e-9. Throws ArgumentError when the
/// trajectory is shorter than the window or not uniformly sampled.
DensityMatrix steady_state_average(const Trajectory& traj, double window);

/// Trapezoid average of the micromotion propagators over one period. Applied
/// to U_T^n rho0 it gives the state averaged over [nT, (n+1)T].
ComplexMatrix period_average_operator(const OnePeriod& one);

struct ConvergenceOptions {
  double eps = 1e-6;
  std::uint64_t max_periods = std::uint64_t{1} << 24;
};

/// Smallest n*T such that the period-averaged state moves by at most eps
/// (Frobenius) between periods n-1 and n. Bracketed by doubling n, then
/// bisected. Requires a 9x9 (Liouville) propagator. Throws HorizonError if
/// max_periods is exceeded.
double convergence_time(const OnePeriod& one, const PeriodicPlan& plan, const ComplexMatrix& rho0,
                        LiouvilleBasis basis, const ConvergenceOptions& options = {});

double convergence_time(const Generator& g, const PeriodicPlan& plan, const DensityMatrix& rho0,
                        MagnusOrder order, const ConvergenceOptions& options = {});

}  // namespace lambdadyn
