#include "lambdadyn/model.hpp"

#include <cmath>
#include <string>

#include "lambdadyn/errors.hpp"

namespace lambdadyn {

namespace {

constexpr Complex kI{0.0, 1.0};

void require(bool ok, const std::string& message) {
  if (!ok) throw ArgumentError("LambdaParams: " + message);
}

struct CaseRow {
  const char* name;
  double rabi_c;
  double rabi_p;
  double gamma_12;
  double gamma_23;
};

// E2 - E1 = 6, E3 - E1 = 2 for every case.
constexpr CaseRow kCases[] = {
    {"A-I", 1.12, 1.00, 0.0, 0.0}, {"A-II", 1.12, 1.00, 0.9, 1.0},
    {"B-I", 0.20, 0.20, 0.0, 0.0}, {"B-II", 0.20, 0.20, 0.9, 1.0},
    {"C-I", 10.0, 1.00, 0.0, 0.0}, {"C-II", 10.0, 1.00, 0.9, 1.0},
};

}  // namespace

std::string_view to_string(Drive d) { return d == Drive::Full ? "full" : "rwa"; }

void LambdaParams::validate() const {
  const double vals[] = {e1,     e2,       e3,       omega_p, omega_c, rabi_p,
                         rabi_c, gamma_12, gamma_23, nbar_12, nbar_23};
  for (double v : vals) require(std::isfinite(v), "all parameters must be finite");
  require(e2 > e1 && e2 > e3, "|2> must be the highest level (e2 > e1, e2 > e3)");
  require(std::abs(e2 - e1) > std::abs(e1 - e3) && std::abs(e2 - e3) > std::abs(e1 - e3),
          "Lambda ordering requires |e2-e1|, |e2-e3| > |e1-e3|");
  require(rabi_p >= 0.0 && rabi_c >= 0.0, "Rabi frequencies must be non-negative");
  require(gamma_12 >= 0.0 && gamma_23 >= 0.0, "decay rates must be non-negative");
  require(nbar_12 >= 0.0 && nbar_23 >= 0.0, "bath occupations must be non-negative");
  require(omega_p > 0.0 && omega_c > 0.0, "field frequencies must be positive");
}

LambdaParams LambdaParams::two_photon_resonant(double e1, double e2, double e3, double rabi_p,
                                               double rabi_c, double gamma_12, double gamma_23,
                                               double delta_p, double delta_c) {
  LambdaParams p;
  p.e1 = e1;
  p.e2 = e2;
  p.e3 = e3;
  p.rabi_p = rabi_p;
  p.rabi_c = rabi_c;
  p.gamma_12 = gamma_12;
  p.gamma_23 = gamma_23;
  p.omega_p = e2 - e1 + delta_p;
  p.omega_c = e2 - e3 + delta_c;
  return p;
}

LambdaParams table_case(std::string_view name) {
  for (const auto& row : kCases) {
    if (name == row.name) {
      return LambdaParams::two_photon_resonant(0.0, 6.0, 2.0, row.rabi_p, row.rabi_c,
                                               row.gamma_12, row.gamma_23);
    }
  }
  throw ArgumentError("unknown case preset '" + std::string(name) + "'");
}

std::vector<std::string> table_case_names() {
  std::vector<std::string> names;
  for (const auto& row : kCases) names.emplace_back(row.name);
  return names;
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : DensityMatrix(std::move(m), Tolerance{}) {}

DensityMatrix::DensityMatrix(ComplexMatrix m, const Tolerance& tol) : m_(std::move(m)) {
  if (m_.rows() != kLevels || m_.cols() != kLevels) {
    throw DimensionError("DensityMatrix: expected a 3x3 matrix");
  }
  if (!m_.all_finite()) throw ArgumentError("DensityMatrix: non-finite entries");
  if (max_abs_diff(m_, m_.adjoint()) > tol.hermiticity) {
    throw ArgumentError("DensityMatrix: not Hermitian");
  }
  if (std::abs(m_.trace() - 1.0) > tol.trace) {
    throw ArgumentError("DensityMatrix: trace differs from 1");
  }
  if (eigvalsh(m_).front() < tol.min_eigenvalue) {
    throw ArgumentError("DensityMatrix: not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::pure_level(std::size_t k) {
  if (k >= kLevels) throw ArgumentError("DensityMatrix::pure_level: level index out of range");
  return DensityMatrix(ComplexMatrix::unit(kLevels, k, k), NoCheck{});
}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix m) {
  if (m.rows() != kLevels || m.cols() != kLevels) {
    throw DimensionError("DensityMatrix: expected a 3x3 matrix");
  }
  return DensityMatrix(std::move(m), NoCheck{});
}

SuperOperator::SuperOperator(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() != kLiouvilleDim || m_.cols() != kLiouvilleDim) {
    throw DimensionError("SuperOperator: expected a 9x9 matrix");
  }
}

ComplexMatrix h0(const LambdaParams& p) {
  const Complex d[] = {p.e1, p.e2, p.e3};
  return ComplexMatrix::diagonal(d);
}

ComplexMatrix h_sr(const LambdaParams& p, double t) {
  ComplexMatrix h(kLevels, kLevels);
  const double probe = -p.rabi_p * std::cos(p.omega_p * t);
  const double control = -p.rabi_c * std::cos(p.omega_c * t);
  h(0, 1) = h(1, 0) = probe;
  h(1, 2) = h(2, 1) = control;
  return h;
}

ComplexMatrix h_sr_rwa(const LambdaParams& p, double t) {
  ComplexMatrix h(kLevels, kLevels);
  const Complex probe = -0.5 * p.rabi_p * std::exp(-kI * (p.omega_p * t));
  const Complex control = -0.5 * p.rabi_c * std::exp(-kI * (p.omega_c * t));
  h(1, 0) = probe;  // |2><1|
  h(0, 1) = std::conj(probe);
  h(1, 2) = control;  // |2><3|
  h(2, 1) = std::conj(control);
  return h;
}

ComplexMatrix hamiltonian(const LambdaParams& p, double t, Drive drive) {
  ComplexMatrix h = drive == Drive::Full ? h_sr(p, t) : h_sr_rwa(p, t);
  h(0, 0) += p.e1;
  h(1, 1) += p.e2;
  h(2, 2) += p.e3;
  return h;
}

ComplexMatrix rwf_unitary(const LambdaParams& p, double t) {
  const Complex d[] = {1.0, std::exp(-kI * (p.omega_p * t)),
                       std::exp(-kI * ((p.omega_p - p.omega_c) * t))};
  return ComplexMatrix::diagonal(d);
}

ComplexMatrix h_rwf(const LambdaParams& p) {
  const double w2 = p.e2 - p.e1;
  const double w3 = p.e3 - p.e1;
  ComplexMatrix h(kLevels, kLevels);
  h(0, 1) = h(1, 0) = -0.5 * p.rabi_p;
  h(1, 2) = h(2, 1) = -0.5 * p.rabi_c;
  h(1, 1) = w2 - p.omega_p;
  h(2, 2) = w3 - (p.omega_p - p.omega_c);
  return h;
}

ComplexMatrix rwf_transform(const ComplexMatrix& rho, const LambdaParams& p, double t) {
  if (rho.rows() != kLevels || rho.cols() != kLevels) {
    throw DimensionError("rwf_transform: expected a 3x3 matrix");
  }
  // W is diagonal, so (W^dagger rho W)_ij = conj(w_i) rho_ij w_j.
  const ComplexMatrix w = rwf_unitary(p, t);
  ComplexMatrix out(kLevels, kLevels);
  for (std::size_t i = 0; i < kLevels; ++i)
    for (std::size_t j = 0; j < kLevels; ++j)
      out(i, j) = i == j ? rho(i, j) : std::conj(w(i, i)) * rho(i, j) * w(j, j);
  return out;
}

DensityMatrix rwf_transform(const DensityMatrix& rho, const LambdaParams& p, double t) {
  return DensityMatrix::unchecked(rwf_transform(rho.matrix(), p, t));
}

std::vector<JumpOperator> jump_operators(const LambdaParams& p) {
  using M = ComplexMatrix;
  return {
      {M::unit(kLevels, 0, 1), p.gamma_12 * (p.nbar_12 + 1.0)},
      {M::unit(kLevels, 1, 0), p.gamma_12 * p.nbar_12},
      {M::unit(kLevels, 2, 1), p.gamma_23 * (p.nbar_23 + 1.0)},
      {M::unit(kLevels, 1, 2), p.gamma_23 * p.nbar_23},
  };
}

SuperOperator liouvillian(const LambdaParams& p, double t, Drive drive) {
  const ComplexMatrix h = hamiltonian(p, t, drive);
  const ComplexMatrix id = ComplexMatrix::identity(kLevels);
  return SuperOperator(kron(h, id) - kron(id, h.transpose()));
}

SuperOperator lindbladian(const LambdaParams& p) {
  const ComplexMatrix id = ComplexMatrix::identity(kLevels);
  ComplexMatrix d(kLiouvilleDim, kLiouvilleDim);
  for (const auto& [l, rate] : jump_operators(p)) {
    if (rate == 0.0) continue;
    const ComplexMatrix ldl = l.adjoint() * l;
    ComplexMatrix term = kron(l, l.conj());
    term -= 0.5 * (kron(ldl, id) + kron(id, ldl.transpose()));
    d += term * Complex(rate, 0.0);
  }
  return SuperOperator(std::move(d));
}

std::vector<Complex> vec(const ComplexMatrix& a) {
  if (a.rows() != kLevels || a.cols() != kLevels) {
    throw DimensionError("vec: expected a 3x3 matrix");
  }
  auto e = a.entries();
  return {e.begin(), e.end()};
}

ComplexMatrix unvec(std::span<const Complex> v) {
  if (v.size() != kLiouvilleDim) throw DimensionError("unvec: expected 9 entries");
  return ComplexMatrix(kLevels, kLevels, std::vector<Complex>(v.begin(), v.end()));
}

namespace {

// S differs from the identity only in row 0: (1,0,0,0,1,0,0,0,1).
constexpr std::size_t kDiag1 = 4;
constexpr std::size_t kDiag2 = 8;

void require_super(const ComplexMatrix& m, const char* op) {
  if (m.rows() != kLiouvilleDim || m.cols() != kLiouvilleDim) {
    throw DimensionError(std::string(op) + ": expected a 9x9 matrix");
  }
}

}  // namespace

std::vector<Complex> to_trace_coordinates(const ComplexMatrix& rho) {
  std::vector<Complex> c = vec(rho);
  c[0] += c[kDiag1] + c[kDiag2];
  return c;
}

ComplexMatrix from_trace_coordinates(std::span<const Complex> c) {
  if (c.size() != kLiouvilleDim) throw DimensionError("from_trace_coordinates: expected 9 entries");
  std::vector<Complex> v(c.begin(), c.end());
  v[0] -= v[kDiag1] + v[kDiag2];
  return unvec(v);
}

ComplexMatrix to_trace_basis(const ComplexMatrix& m) {
  require_super(m, "to_trace_basis");
  ComplexMatrix out = m;
  // S m: row 0 becomes the sum of rows 0, 4, 8
  for (std::size_t j = 0; j < kLiouvilleDim; ++j) out(0, j) += m(kDiag1, j) + m(kDiag2, j);
  // (S m) S^-1: columns 4 and 8 lose column 0
  for (std::size_t i = 0; i < kLiouvilleDim; ++i) {
    out(i, kDiag1) -= out(i, 0);
    out(i, kDiag2) -= out(i, 0);
  }
  return out;
}

ComplexMatrix from_trace_basis(const ComplexMatrix& m) {
  require_super(m, "from_trace_basis");
  ComplexMatrix out = m;
  for (std::size_t j = 0; j < kLiouvilleDim; ++j) out(0, j) -= m(kDiag1, j) + m(kDiag2, j);
  for (std::size_t i = 0; i < kLiouvilleDim; ++i) {
    out(i, kDiag1) += out(i, 0);
    out(i, kDiag2) += out(i, 0);
  }
  return out;
}

}  // namespace lambdadyn
