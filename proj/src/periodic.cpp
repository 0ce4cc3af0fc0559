#include "lambdadyn/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "lambdadyn/errors.hpp"

namespace lambdadyn {

namespace {

constexpr int kPeriodicityProbes = 16;
constexpr double kPeriodicityTolerance = 1e-12;
constexpr std::int64_t kMaxDenominator = 10'000;

struct Rational {
  std::int64_t num;
  std::int64_t den;
};

// Continued-fraction convergents until the approximation is within a
// relative 1e-9 of x.
Rational to_rational(double x) {
  const double target = x;
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_d = std::floor(r);
    if (a_d > 1e12) break;
    const auto a = static_cast<std::int64_t>(a_d);
    const std::int64_t h2 = a * h1 + h0;
    const std::int64_t k2 = a * k1 + k0;
    if (k2 > kMaxDenominator) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - target) <=
        1e-9 * std::abs(target)) {
      return {h1, k1};
    }
    const double frac = r - a_d;
    if (frac == 0.0) break;
    r = 1.0 / frac;
  }
  throw ConfigurationError("frequency " + std::to_string(x) +
                           " is not a rational with denominator <= 10^4");
}

}  // namespace

PeriodicPlan::PeriodicPlan(const Generator& g, double period, std::size_t steps_per_period)
    : period_(period), steps_(steps_per_period) {
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw ArgumentError("PeriodicPlan: period must be positive");
  }
  if (steps_per_period == 0) throw ArgumentError("PeriodicPlan: steps_per_period must be >= 1");
  std::mt19937_64 rng(0x5eed5eedULL);
  std::uniform_real_distribution<double> dist(0.0, period);
  for (int i = 0; i < kPeriodicityProbes; ++i) {
    const double t = dist(rng);
    const ComplexMatrix a = g(t);
    const ComplexMatrix b = g(t + period);
    double scale = 1.0;
    for (const auto& z : a.entries()) scale = std::max(scale, std::abs(z));
    if (max_abs_diff(a, b) > kPeriodicityTolerance * scale) {
      throw ConfigurationError("PeriodicPlan: generator is not periodic with T = " +
                               std::to_string(period));
    }
  }
}

double commensurate_period(double omega_p, double omega_c) {
  if (!(omega_p > 0.0) || !(omega_c > 0.0)) {
    throw ConfigurationError("commensurate_period: frequencies must be positive");
  }
  const Rational p = to_rational(omega_p);
  const Rational c = to_rational(omega_c);
  // gcd of p.num/p.den and c.num/c.den = gcd(p.num*c.den, c.num*p.den) / (p.den*c.den)
  const std::int64_t g = std::gcd(p.num * c.den, c.num * p.den);
  const double freq = static_cast<double>(g) / static_cast<double>(p.den * c.den);
  const double t_min = kReferencePeriod / freq;
  const double multiple = std::max(1.0, std::ceil(kReferencePeriod / t_min - 1e-9));
  return t_min * multiple;
}

PeriodicPlan plan_for(const LambdaParams& p, const Generator& g, std::size_t base_steps) {
  const double period = commensurate_period(p.omega_p, p.omega_c);
  const double scaled = std::round(static_cast<double>(base_steps) * period / kReferencePeriod);
  if (scaled > static_cast<double>(kMaxStepsPerPeriod)) {
    throw ConfigurationError("plan_for: period " + std::to_string(period) + " needs " +
                             std::to_string(scaled) + " steps (cap " +
                             std::to_string(kMaxStepsPerPeriod) + ")");
  }
  return PeriodicPlan(g, period, static_cast<std::size_t>(std::max(1.0, scaled)));
}

OnePeriod one_period(const Generator& g, const PeriodicPlan& plan, MagnusOrder order) {
  PropagationResult r =
      propagate(g, 0.0, plan.period(), plan.steps_per_period(), order, /*keep_cumulative=*/true);
  return {std::move(r.propagator), std::move(r.cumulative)};
}

ComplexMatrix stroboscopic(const ComplexMatrix& u_period,
                           const std::vector<ComplexMatrix>& micromotion, std::uint64_t n,
                           std::size_t k) {
  if (k >= micromotion.size()) {
    throw ArgumentError("stroboscopic: grid index " + std::to_string(k) + " out of range");
  }
  if (n == 0) return micromotion[k];
  return micromotion[k] * matrix_power(u_period, n);
}

ComplexMatrix doubling(const ComplexMatrix& u_period, unsigned m) {
  ComplexMatrix u = u_period;
  for (unsigned i = 0; i < m; ++i) u = u * u;
  return u;
}

ComplexMatrix evolve_state(const ComplexMatrix& propagator, const ComplexMatrix& rho,
                           LiouvilleBasis basis) {
  if (propagator.rows() == kLevels && propagator.cols() == kLevels) {
    return propagator * rho * propagator.adjoint();
  }
  if (propagator.rows() != kLiouvilleDim || propagator.cols() != kLiouvilleDim) {
    throw DimensionError("evolve_state: propagator must be 3x3 or 9x9");
  }
  if (basis == LiouvilleBasis::TraceAdapted) {
    const auto c = to_trace_coordinates(rho);
    return from_trace_coordinates(propagator * std::span<const Complex>(c));
  }
  const auto v = vec(rho);
  return unvec(propagator * std::span<const Complex>(v));
}

std::string_view to_string(Frame f) { return f == Frame::Lab ? "lab" : "rwf"; }

Trajectory Trajectory::in_frame(Frame target, const LambdaParams& p) const {
  if (target == frame) return *this;
  Trajectory out;
  out.frame = target;
  out.times = times;
  out.states.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (target == Frame::Rotating) {
      out.states.push_back(rwf_transform(states[i], p, times[i]));
    } else {
      const ComplexMatrix w = rwf_unitary(p, times[i]);
      out.states.push_back(DensityMatrix::unchecked(w * states[i].matrix() * w.adjoint()));
    }
  }
  return out;
}

void Trajectory::validate(double psd_slack) const {
  if (times.size() != states.size()) throw ArgumentError("Trajectory: size mismatch");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw ArgumentError("Trajectory: times not increasing");
  }
  DensityMatrix::Tolerance tol;
  tol.min_eigenvalue = -psd_slack;
  for (const auto& s : states) DensityMatrix(s.matrix(), tol);
}

DensityMatrix steady_state_average(const Trajectory& traj, double window) {
  const std::size_t n = traj.size();
  if (n < 2 || traj.states.size() != n) {
    throw ArgumentError("steady_state_average: need at least two samples");
  }
  if (!(window > 0.0)) throw ArgumentError("steady_state_average: window must be positive");
  const double dt = traj.times[1] - traj.times[0];
  const double span = traj.times.back() - traj.times.front();
  if (span < window * (1.0 - 1e-9)) {
    throw ArgumentError("steady_state_average: trajectory spans " + std::to_string(span) +
                        ", shorter than the window " + std::to_string(window));
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs((traj.times[i] - traj.times[i - 1]) - dt) > 1e-6 * std::max(1.0, dt)) {
      throw ArgumentError("steady_state_average: sampling is not uniform");
    }
  }
  const auto intervals = static_cast<std::size_t>(std::llround(window / dt));
  if (intervals == 0 || intervals > n - 1) {
    throw ArgumentError("steady_state_average: window does not fit the sampling");
  }
  const std::size_t first = n - 1 - intervals;
  ComplexMatrix acc(kLevels, kLevels);
  for (std::size_t i = first; i < n; ++i) {
    const double w = (i == first || i == n - 1) ? 0.5 : 1.0;
    acc += traj.states[i].matrix() * Complex(w, 0.0);
  }
  acc /= Complex(static_cast<double>(intervals), 0.0);
  const double drift = std::abs(acc.trace() - 1.0);
  if (drift <= 1e-9) acc /= acc.trace();
  return DensityMatrix::unchecked(std::move(acc));
}

ComplexMatrix period_average_operator(const OnePeriod& one) {
  const std::size_t count = one.micromotion.size();
  if (count < 2) throw ArgumentError("period_average_operator: need a micromotion grid");
  ComplexMatrix acc(one.u_period.rows(), one.u_period.cols());
  for (std::size_t k = 0; k < count; ++k) {
    const double w = (k == 0 || k + 1 == count) ? 0.5 : 1.0;
    acc += one.micromotion[k] * Complex(w, 0.0);
  }
  return acc / Complex(static_cast<double>(count - 1), 0.0);
}

double convergence_time(const OnePeriod& one, const PeriodicPlan& plan, const ComplexMatrix& rho0,
                        LiouvilleBasis basis, const ConvergenceOptions& options) {
  if (one.u_period.rows() != kLiouvilleDim) {
    throw DimensionError("convergence_time: needs a Liouville-space (9x9) propagator");
  }
  if (!(options.eps > 0.0)) throw ArgumentError("convergence_time: eps must be positive");
  const ComplexMatrix average = period_average_operator(one);
  const std::vector<Complex> c0 =
      basis == LiouvilleBasis::TraceAdapted ? to_trace_coordinates(rho0) : vec(rho0);

  auto delta = [&](std::uint64_t n) {
    const ComplexMatrix diff = average * (matrix_power(one.u_period, n) -
                                          matrix_power(one.u_period, n - 1));
    const auto d = diff * std::span<const Complex>(c0);
    const ComplexMatrix m = basis == LiouvilleBasis::TraceAdapted ? from_trace_coordinates(d)
                                                                  : unvec(d);
    return frobenius_norm(m);
  };

  std::uint64_t hi = 1;
  double last = delta(1);
  while (last > options.eps) {
    if (hi >= options.max_periods) {
      throw HorizonError("convergence_time: no convergence within " +
                             std::to_string(options.max_periods) + " periods",
                         last);
    }
    hi = std::min(hi * 2, options.max_periods);
    last = delta(hi);
  }
  std::uint64_t lo = hi / 2;  // delta(lo) > eps unless hi == 1
  if (hi > 1) {
    while (hi - lo > 1) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (delta(mid) <= options.eps) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
  }
  return static_cast<double>(hi) * plan.period();
}

double convergence_time(const Generator& g, const PeriodicPlan& plan, const DensityMatrix& rho0,
                        MagnusOrder order, const ConvergenceOptions& options) {
  if (g.dimension() != kLiouvilleDim) {
    throw DimensionError("convergence_time: needs a Liouville-space generator");
  }
  const OnePeriod one = one_period(g, plan, order);
  return convergence_time(one, plan, rho0.matrix(), g.basis(), options);
}

}  // namespace lambdadyn
