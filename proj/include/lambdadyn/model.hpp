#pragma once

// Operators of the driven three-level Lambda system. Basis order is fixed
// as |1>, |2>, |3> (indices 0, 1, 2); |2> is the excited state. hbar = 1.
//
// Vectorization is row-major: vec(rho)[3*i + j] = rho(i, j). With this
// convention A*rho*C maps to kron(A, C^T) * vec(rho).

#include <string>
#include <string_view>
#include <vector>

#include "lambdadyn/linalg.hpp"

namespace lambdadyn {

inline constexpr std::size_t kLevels = 3;
inline constexpr std::size_t kLiouvilleDim = kLevels * kLevels;

enum class Drive { Full, Rwa };

std::string_view to_string(Drive d);

struct LambdaParams {
  double e1 = 0.0;
  double e2 = 0.0;
  double e3 = 0.0;
  double omega_p = 0.0;
  double omega_c = 0.0;
  double rabi_p = 0.0;
  double rabi_c = 0.0;
  double gamma_12 = 0.0;
  // Decay rate of the |2> -> |3> channel. Published parameter tables label
  // this column gamma_13; the master equation only has a 2->3 channel.
  double gamma_23 = 0.0;
  double nbar_12 = 0.0;
  double nbar_23 = 0.0;

  /// Throws ArgumentError naming the first violated constraint.
  void validate() const;

  bool dissipative() const noexcept { return gamma_12 > 0.0 || gamma_23 > 0.0; }

  /// Fields tuned to two-photon resonance with the given detunings:
  /// omega_p = E2 - E1 + delta_p, omega_c = E2 - E3 + delta_c.
  static LambdaParams two_photon_resonant(double e1, double e2, double e3, double rabi_p,
                                          double rabi_c, double gamma_12, double gamma_23,
                                          double delta_p = 0.0, double delta_c = 0.0);

  friend bool operator==(const LambdaParams&, const LambdaParams&) = default;
};

/// Built-in parameter cases "A-I" ... "C-II" (zero detuning, E1 = 0).
/// Throws ArgumentError for an unknown name.
LambdaParams table_case(std::string_view name);
std::vector<std::string> table_case_names();

/// 3x3 Hermitian, unit-trace, positive-semidefinite state.
class DensityMatrix {
 public:
  struct Tolerance {
    double hermiticity = 1e-10;
    double trace = 1e-10;
    double min_eigenvalue = -1e-9;
  };

  /// Validates with the default tolerances.
  explicit DensityMatrix(ComplexMatrix m);
  DensityMatrix(ComplexMatrix m, const Tolerance& tol);

  /// |k><k| for a zero-based level index.
  static DensityMatrix pure_level(std::size_t k);
  /// Skips validation; for intermediate results whose invariants the caller
  /// guarantees or checks separately.
  static DensityMatrix unchecked(ComplexMatrix m);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

 private:
  struct NoCheck {};
  DensityMatrix(ComplexMatrix m, NoCheck) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

/// 9x9 Liouville-space operator acting on row-major vectorized 3x3 matrices.
class SuperOperator {
 public:
  explicit SuperOperator(ComplexMatrix m);
  static SuperOperator zero() { return SuperOperator(ComplexMatrix(kLiouvilleDim, kLiouvilleDim)); }
  const ComplexMatrix& matrix() const noexcept { return m_; }

 private:
  ComplexMatrix m_;
};

// Hamiltonian pieces.
ComplexMatrix h0(const LambdaParams& p);
/// Exact semiclassical drive.
ComplexMatrix h_sr(const LambdaParams& p, double t);
/// Drive with counter-rotating terms dropped.
ComplexMatrix h_sr_rwa(const LambdaParams& p, double t);
/// h0 + drive.
ComplexMatrix hamiltonian(const LambdaParams& p, double t, Drive drive);

// Rotating frame.
ComplexMatrix rwf_unitary(const LambdaParams& p, double t);
/// Time-independent rotating-frame RWA Hamiltonian, energies measured from E1.
ComplexMatrix h_rwf(const LambdaParams& p);
/// W^dagger(t) rho W(t).
ComplexMatrix rwf_transform(const ComplexMatrix& rho, const LambdaParams& p, double t);
DensityMatrix rwf_transform(const DensityMatrix& rho, const LambdaParams& p, double t);

struct JumpOperator {
  ComplexMatrix op;
  double rate;
};

/// (|1><2|, g12(n12+1)), (|2><1|, g12 n12), (|3><2|, g23(n23+1)), (|2><3|, g23 n23).
std::vector<JumpOperator> jump_operators(const LambdaParams& p);

/// H(t) (x) I - I (x) H(t)^T.
SuperOperator liouvillian(const LambdaParams& p, double t, Drive drive);
SuperOperator lindbladian(const LambdaParams& p);

std::vector<Complex> vec(const ComplexMatrix& a);
ComplexMatrix unvec(std::span<const Complex> v);

// Trace-adapted Liouville coordinates: identical to vec() except that
// coordinate 0 holds tr(rho) instead of rho(0,0). A trace-preserving
// superoperator has first row exactly e0 in these coordinates, and products
// of such matrices keep that row bit for bit.
enum class LiouvilleBasis { Standard, TraceAdapted };

std::vector<Complex> to_trace_coordinates(const ComplexMatrix& rho);
ComplexMatrix from_trace_coordinates(std::span<const Complex> c);
/// S m S^-1 for a 9x9 matrix given in the standard basis.
ComplexMatrix to_trace_basis(const ComplexMatrix& m);
/// Inverse of to_trace_basis.
ComplexMatrix from_trace_basis(const ComplexMatrix& m);

}  // namespace lambdadyn
