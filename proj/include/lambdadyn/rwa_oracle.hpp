#pragma once

// Closed-form rotating-wave results at two-photon resonance with zero
// detuning (omega_p = E2 - E1, omega_c = E2 - E3). All matrices are in the
// rotating frame. Every function throws PreconditionError when the
// parameters are off resonance or both Rabi frequencies vanish.

#include "lambdadyn/linalg.hpp"
#include "lambdadyn/model.hpp"

namespace lambdadyn {

/// lambda = sqrt(Omega_c^2 + Omega_p^2) / 2.
double lambda_eff(const LambdaParams& p);

/// exp(-i h_rwf t) written out in closed form.
ComplexMatrix rwa_propagator_tpr(const LambdaParams& p, double t);

/// Rotating-frame density matrix at time t for rho(0) = |1><1|.
DensityMatrix rwa_density_tpr(const LambdaParams& p, double t);

}  // namespace lambdadyn
