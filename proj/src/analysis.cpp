#include "lambdadyn/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lambdadyn/errors.hpp"

namespace lambdadyn {

namespace {

constexpr double kSteadyGapFloor = 1e-8;

void require_square(const ComplexMatrix& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError(std::string(who) + ": matrix must be square and non-empty");
  }
}

}  // namespace

double rwa_error(const ComplexMatrix& rho_rwa, const ComplexMatrix& rho) {
  if (rho_rwa.rows() != rho.rows() || rho_rwa.cols() != rho.cols()) {
    throw DimensionError("rwa_error: shape mismatch");
  }
  const double denom = frobenius_norm(rho);
  if (denom == 0.0) throw ArgumentError("rwa_error: reference state has zero norm");
  return frobenius_norm(rho_rwa - rho) / denom;
}

double rwa_error(const DensityMatrix& rho_rwa, const DensityMatrix& rho) {
  return rwa_error(rho_rwa.matrix(), rho.matrix());
}

GapReport spectral_gap(const ComplexMatrix& u_period, std::optional<double> period) {
  require_square(u_period, "spectral_gap");
  GapReport report;
  for (const Complex& lam : eig(u_period)) report.eigen_logs.push_back(std::log(lam));
  std::sort(report.eigen_logs.begin(), report.eigen_logs.end(),
            [](const Complex& a, const Complex& b) {
              if (a.real() != b.real()) return a.real() > b.real();
              return a.imag() < b.imag();
            });
  // With every real part <= 0 for a contraction, the largest real part is
  // also the one closest to zero. Guard against tiny positive round-off.
  std::size_t steady = 0;
  for (std::size_t i = 1; i < report.eigen_logs.size(); ++i) {
    if (std::abs(report.eigen_logs[i].real()) < std::abs(report.eigen_logs[steady].real())) {
      steady = i;
    }
  }
  report.steady_index = steady;

  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < report.eigen_logs.size(); ++i) {
    if (i != steady) gap = std::min(gap, -report.eigen_logs[i].real());
  }
  if (!std::isfinite(gap)) gap = 0.0;
  report.gap = std::max(gap, 0.0);
  report.degenerate = report.gap <= kSteadyGapFloor;
  if (report.degenerate) report.gap = 0.0;
  if (period && *period > 0.0) report.gap_per_time = report.gap / *period;
  return report;
}

GapReport spectral_gap(const SuperOperator& u_period, std::optional<double> period) {
  return spectral_gap(u_period.matrix(), period);
}

ComplexMatrix choi_matrix(const ComplexMatrix& m) {
  if (m.rows() != kLiouvilleDim || m.cols() != kLiouvilleDim) {
    throw DimensionError("choi_matrix: expected a 9x9 map");
  }
  const std::size_t n = kLevels;
  ComplexMatrix j(kLiouvilleDim, kLiouvilleDim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t jj = 0; jj < n; ++jj) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          j(k * n + i, l * n + jj) = m(i * n + jj, k * n + l);
        }
      }
    }
  }
  return j;
}

CptpReport cptp_check(const ComplexMatrix& m) {
  if (m.rows() != kLiouvilleDim || m.cols() != kLiouvilleDim) {
    throw DimensionError("cptp_check: expected a 9x9 map");
  }
  CptpReport report;
  double defect = 0.0;
  for (std::size_t k = 0; k < kLevels; ++k) {
    for (std::size_t l = 0; l < kLevels; ++l) {
      Complex sum = 0.0;
      for (std::size_t i = 0; i < kLevels; ++i) sum += m(i * kLevels + i, k * kLevels + l);
      defect = std::max(defect, std::abs(sum - (k == l ? 1.0 : 0.0)));
    }
  }
  report.trace_defect = defect;
  report.trace_preserving = defect <= kTraceDefectThreshold;

  if (!m.all_finite()) {
    report.min_choi_eigenvalue = std::numeric_limits<double>::quiet_NaN();
    report.completely_positive = false;
    return report;
  }
  try {
    const std::vector<double> ev = eigvalsh(choi_matrix(m));
    report.min_choi_eigenvalue = ev.front();
    report.completely_positive = ev.front() >= kChoiEigenvalueThreshold;
  } catch (const ConvergenceError&) {
    report.min_choi_eigenvalue = std::numeric_limits<double>::quiet_NaN();
    report.completely_positive = false;
  }
  return report;
}

CptpReport cptp_check(const SuperOperator& m) { return cptp_check(m.matrix()); }

ValidityReport density_validity(const ComplexMatrix& rho) {
  if (rho.rows() != kLevels || rho.cols() != kLevels) {
    throw DimensionError("density_validity: expected a 3x3 matrix");
  }
  ValidityReport report;
  report.trace_defect = std::abs(rho.trace() - 1.0);
  report.hermiticity_defect = max_abs_diff(rho, rho.adjoint());
  report.min_eigenvalue = eigvalsh(rho).front();
  return report;
}

ValidityReport density_validity(const DensityMatrix& rho) { return density_validity(rho.matrix()); }

}  // namespace lambdadyn
