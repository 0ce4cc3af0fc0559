#include "lambdadyn/magnus.hpp"

#include <cmath>
#include <string>

#include "lambdadyn/errors.hpp"

namespace lambdadyn {

namespace {

constexpr Complex kMinusI{0.0, -1.0};

void require_positive_dt(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ArgumentError("Magnus step: dt must be positive and finite");
  }
}

}  // namespace

Generator::Generator(std::size_t dimension, bool anti_hermitian, Fn fn, LiouvilleBasis basis)
    : dim_(dimension), anti_hermitian_(anti_hermitian), fn_(std::move(fn)), basis_(basis) {
  if (dim_ == 0) throw DimensionError("Generator: dimension must be positive");
  if (!fn_) throw ArgumentError("Generator: empty callable");
}

ComplexMatrix Generator::operator()(double t) const {
  ComplexMatrix a = fn_(t);
  if (a.rows() != dim_ || a.cols() != dim_) {
    throw DimensionError("Generator: callable returned " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + ", declared dimension " +
                         std::to_string(dim_));
  }
  return a;
}

Generator hilbert_generator(const LambdaParams& p, Drive drive) {
  return Generator(kLevels, true,
                   [p, drive](double t) { return hamiltonian(p, t, drive) * kMinusI; });
}

Generator liouville_generator(const LambdaParams& p, Drive drive, bool dissipative,
                              LiouvilleBasis basis) {
  const bool open = dissipative && p.dissipative();
  ComplexMatrix dissipator = open ? lindbladian(p).matrix()
                                  : ComplexMatrix(kLiouvilleDim, kLiouvilleDim);
  if (basis == LiouvilleBasis::Standard) {
    return Generator(kLiouvilleDim, !open, [p, drive, d = std::move(dissipator)](double t) {
      return liouvillian(p, t, drive).matrix() * kMinusI + d;
    });
  }
  return Generator(kLiouvilleDim, !open, [p, drive, d = std::move(dissipator)](double t) {
    ComplexMatrix a = to_trace_basis(liouvillian(p, t, drive).matrix() * kMinusI + d);
    for (std::size_t j = 0; j < kLiouvilleDim; ++j) a(0, j) = 0.0;
    return a;
  }, LiouvilleBasis::TraceAdapted);
}

ComplexMatrix step4(const Generator& g, double t, double dt) {
  require_positive_dt(dt);
  const ComplexMatrix a0 = g(t);
  const ComplexMatrix am = g(t + 0.5 * dt);
  const ComplexMatrix a1 = g(t + dt);
  ComplexMatrix omega = (a0 + am * 4.0 + a1) * Complex(dt / 6.0, 0.0);
  omega += commutator(a1, a0) * Complex(dt * dt / 12.0, 0.0);
  return expm(omega);
}

// Three-node Gauss-Legendre sixth-order Magnus integrator (Blanes-Casas-Ros
// form). With a_k = A(t + c_k dt), c = 1/2 -+ sqrt(15)/10 and 1/2:
//   b1 = dt a2, b2 = sqrt(15) dt/3 (a3 - a1), b3 = 10 dt/3 (a3 - 2 a2 + a1)
//   c1 = [b1, b2], c2 = -[b1, 2 b3 + c1]/60
//   Omega = b1 + b3/12 + [-20 b1 - b3 + c1, b2 + c2]/240
ComplexMatrix step6(const Generator& g, double t, double dt) {
  require_positive_dt(dt);
  const double off = std::sqrt(15.0) / 10.0;
  const ComplexMatrix a1 = g(t + (0.5 - off) * dt);
  const ComplexMatrix a2 = g(t + 0.5 * dt);
  const ComplexMatrix a3 = g(t + (0.5 + off) * dt);

  const ComplexMatrix b1 = a2 * Complex(dt, 0.0);
  const ComplexMatrix b2 = (a3 - a1) * Complex(std::sqrt(15.0) * dt / 3.0, 0.0);
  const ComplexMatrix b3 = (a3 - a2 * 2.0 + a1) * Complex(10.0 * dt / 3.0, 0.0);

  const ComplexMatrix c1 = commutator(b1, b2);
  const ComplexMatrix c2 = commutator(b1, b3 * 2.0 + c1) * Complex(-1.0 / 60.0, 0.0);
  ComplexMatrix omega = b1 + b3 * Complex(1.0 / 12.0, 0.0);
  omega += commutator(b1 * -20.0 - b3 + c1, b2 + c2) * Complex(1.0 / 240.0, 0.0);
  return expm(omega);
}

ComplexMatrix step(const Generator& g, double t, double dt, MagnusOrder order) {
  return order == MagnusOrder::Order4 ? step4(g, t, dt) : step6(g, t, dt);
}

PropagationResult propagate(const Generator& g, double t0, double t1, std::size_t steps,
                            MagnusOrder order, bool keep_cumulative) {
  if (steps == 0) throw ArgumentError("propagate: steps must be at least 1");
  if (!(t1 > t0)) throw ArgumentError("propagate: t1 must exceed t0");
  const double dt = (t1 - t0) / static_cast<double>(steps);

  PropagationResult result;
  result.propagator = ComplexMatrix::identity(g.dimension());
  if (keep_cumulative) {
    result.cumulative.reserve(steps + 1);
    result.cumulative.push_back(result.propagator);
  }
  for (std::size_t k = 0; k < steps; ++k) {
    // grid points from the index, not by accumulation, so t_k stays exact
    const double tk = t0 + static_cast<double>(k) * dt;
    result.propagator = step(g, tk, dt, order) * result.propagator;
    if (keep_cumulative) result.cumulative.push_back(result.propagator);
  }
  return result;
}

}  // namespace lambdadyn
