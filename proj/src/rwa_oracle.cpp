#include "lambdadyn/rwa_oracle.hpp"

#include <cmath>

#include "lambdadyn/errors.hpp"

namespace lambdadyn {

namespace {

constexpr double kResonanceTolerance = 1e-12;
constexpr Complex kI{0.0, 1.0};

void require_tpr(const LambdaParams& p) {
  if (std::abs(p.omega_p - (p.e2 - p.e1)) > kResonanceTolerance ||
      std::abs(p.omega_c - (p.e2 - p.e3)) > kResonanceTolerance) {
    throw PreconditionError(
        "RWA closed form needs two-photon resonance with zero detuning "
        "(omega_p = e2 - e1, omega_c = e2 - e3)");
  }
  if (!(p.rabi_p * p.rabi_p + p.rabi_c * p.rabi_c > 0.0)) {
    throw PreconditionError("RWA closed form needs a nonzero Rabi frequency");
  }
}

}  // namespace

double lambda_eff(const LambdaParams& p) {
  require_tpr(p);
  return 0.5 * std::sqrt(p.rabi_c * p.rabi_c + p.rabi_p * p.rabi_p);
}

ComplexMatrix rwa_propagator_tpr(const LambdaParams& p, double t) {
  const double lam = lambda_eff(p);
  const double wc = p.rabi_c;
  const double wp = p.rabi_p;
  const double s2 = wc * wc + wp * wp;
  const double c = std::cos(lam * t);
  const double s = std::sin(lam * t);

  ComplexMatrix u(kLevels, kLevels);
  u(0, 0) = (wc * wc + wp * wp * c) / s2;
  u(0, 1) = kI * (wp * s / (2.0 * lam));
  u(0, 2) = wc * wp * (c - 1.0) / s2;
  u(1, 0) = kI * (wp * s / (2.0 * lam));
  u(1, 1) = c;
  u(1, 2) = kI * (wc * s / (2.0 * lam));
  u(2, 0) = wc * wp * (c - 1.0) / s2;
  u(2, 1) = kI * (wc * s / (2.0 * lam));
  u(2, 2) = (wc * wc * c + wp * wp) / s2;
  return u;
}

DensityMatrix rwa_density_tpr(const LambdaParams& p, double t) {
  const double lam = lambda_eff(p);
  const double wc = p.rabi_c;
  const double wp = p.rabi_p;
  const double wc2 = wc * wc;
  const double wp2 = wp * wp;
  const double s2 = wc2 + wp2;
  const double s4 = s2 * s2;
  const double s3h = std::pow(s2, 1.5);
  const double c1 = std::cos(lam * t);
  const double c2 = std::cos(2.0 * lam * t);
  const double sn1 = std::sin(lam * t);
  const double sn2 = std::sin(2.0 * lam * t);

  const double r11 = (2.0 * wc2 * wc2 + wp2 * wp2 + 4.0 * wc2 * wp2 * c1 + wp2 * wp2 * c2) /
                     (2.0 * s4);
  const double im12 = -(2.0 * wc2 * wp * sn1 + wp2 * wp * sn2) / (2.0 * s3h);
  const double r13 =
      (2.0 * wc * wp * (wp2 - wc2) * (1.0 - c1) + wc * wp2 * wp * (c2 - 1.0)) / (2.0 * s4);
  const double r22 = wp2 * (1.0 - c2) / (2.0 * s2);
  const double im23 = -wc * wp2 * (2.0 * sn1 - sn2) / (2.0 * s3h);
  const double r33 = wc2 * wp2 * (-4.0 * c1 + c2 + 3.0) / (2.0 * s4);

  ComplexMatrix rho(kLevels, kLevels);
  rho(0, 0) = r11;
  rho(0, 1) = Complex(0.0, im12);
  rho(0, 2) = r13;
  rho(1, 0) = Complex(0.0, -im12);
  rho(1, 1) = r22;
  rho(1, 2) = Complex(0.0, im23);
  rho(2, 0) = r13;
  rho(2, 1) = Complex(0.0, -im23);
  rho(2, 2) = r33;
  return DensityMatrix::unchecked(std::move(rho));
}

}  // namespace lambdadyn
