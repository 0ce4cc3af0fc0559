#pragma once

// Magnus-expansion steppers for dY/dt = A(t) Y. A single step returns the
// propagator Y(t + dt) = M Y(t); products accumulate with later times on the
// left.

#include <functional>
#include <vector>

#include "lambdadyn/linalg.hpp"
#include "lambdadyn/model.hpp"

namespace lambdadyn {

enum class MagnusOrder { Order4 = 4, Order6 = 6 };

/// Time-dependent generator A(t). For closed Hilbert-space dynamics
/// A = -i H(t) (anti_hermitian = true); for Liouville-space dynamics
/// A = -i L(t) + D.
class Generator {
 public:
  using Fn = std::function<ComplexMatrix(double)>;

  Generator(std::size_t dimension, bool anti_hermitian, Fn fn,
            LiouvilleBasis basis = LiouvilleBasis::Standard);

  /// Evaluates A(t); throws DimensionError if the callable returns a matrix
  /// of the wrong shape.
  ComplexMatrix operator()(double t) const;

  std::size_t dimension() const noexcept { return dim_; }
  bool anti_hermitian() const noexcept { return anti_hermitian_; }
  /// Coordinates the generator acts on; only meaningful for dimension 9.
  LiouvilleBasis basis() const noexcept { return basis_; }

 private:
  std::size_t dim_;
  bool anti_hermitian_;
  Fn fn_;
  LiouvilleBasis basis_;
};

/// -i H(t) in the 3-dimensional Hilbert space.
Generator hilbert_generator(const LambdaParams& p, Drive drive);
/// -i L(t) + D in the 9-dimensional Liouville space. With dissipation
/// disabled (or all rates zero) this is the closed Liouville generator.
/// In the trace-adapted basis the generator's trace row is identically zero
/// and is stored as exact zeros.
Generator liouville_generator(const LambdaParams& p, Drive drive, bool dissipative = true,
                              LiouvilleBasis basis = LiouvilleBasis::Standard);

/// Fourth order: exp{dt (A0 + 4 Am + A1)/6 + dt^2/12 [A1, A0]} with samples
/// at t, t + dt/2, t + dt.
ComplexMatrix step4(const Generator& g, double t, double dt);

/// Sixth order: single exponential built from samples at the three
/// Gauss-Legendre nodes of [t, t + dt].
ComplexMatrix step6(const Generator& g, double t, double dt);

ComplexMatrix step(const Generator& g, double t, double dt, MagnusOrder order);

struct PropagationResult {
  ComplexMatrix propagator;
  /// cumulative[k] propagates t0 -> t0 + k*dt; cumulative.front() is the
  /// identity and cumulative.back() equals propagator. Empty unless
  /// requested.
  std::vector<ComplexMatrix> cumulative;
};

/// Ordered product of `steps` uniform Magnus steps over [t0, t1].
PropagationResult propagate(const Generator& g, double t0, double t1, std::size_t steps,
                            MagnusOrder order, bool keep_cumulative = false);

}  // namespace lambdadyn
