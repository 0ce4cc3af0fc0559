#pragma once

// RWA error metric, spectral gap of one-period propagators, CPTP checks and
// density-matrix sanity reports.

#include <optional>
#include <vector>

#include "lambdadyn/linalg.hpp"
#include "lambdadyn/model.hpp"

namespace lambdadyn {

/// ||a - b||_F / ||b||_F. Throws ArgumentError if ||b||_F = 0 and
/// DimensionError on a shape mismatch.
double rwa_error(const ComplexMatrix& rho_rwa, const ComplexMatrix& rho);
double rwa_error(const DensityMatrix& rho_rwa, const DensityMatrix& rho);

struct GapReport {
  /// Principal-branch logarithms of the eigenvalues, sorted by decreasing
  /// real part (ties by imaginary part), so eigen_logs[steady_index] has the
  /// real part closest to zero.
  std::vector<Complex> eigen_logs;
  /// min over the non-steady eigenvalues of -Re ln(lambda), clamped at 0.
  double gap = 0.0;
  std::size_t steady_index = 0;
  /// True when no eigenvalue separates from the steady one
  /// (gap <= 1e-8), e.g. for unitary maps.
  bool degenerate = false;
  /// gap / T when the period is known.
  std::optional<double> gap_per_time;
};

/// Throws ConvergenceError if the eigensolver fails.
GapReport spectral_gap(const ComplexMatrix& u_period, std::optional<double> period = {});
GapReport spectral_gap(const SuperOperator& u_period, std::optional<double> period = {});

/// Reshuffled (Choi) matrix J[(k,i),(l,j)] = M[(i,j),(k,l)] of a 9x9 map
/// in the standard row-major basis.
ComplexMatrix choi_matrix(const ComplexMatrix& m);

struct CptpReport {
  bool trace_preserving = false;
  /// sup-norm of vec(I)^dagger M - vec(I)^dagger.
  double trace_defect = 0.0;
  bool completely_positive = false;
  double min_choi_eigenvalue = 0.0;

  bool ok() const noexcept { return trace_preserving && completely_positive; }
};

inline constexpr double kTraceDefectThreshold = 1e-10;
inline constexpr double kChoiEigenvalueThreshold = -1e-9;

/// Never throws on a well-shaped input; DimensionError otherwise.
CptpReport cptp_check(const ComplexMatrix& m);
CptpReport cptp_check(const SuperOperator& m);

struct ValidityReport {
  double trace_defect = 0.0;
  double hermiticity_defect = 0.0;
  double min_eigenvalue = 0.0;
};

ValidityReport density_validity(const ComplexMatrix& rho);
ValidityReport density_validity(const DensityMatrix& rho);

}  // namespace lambdadyn
